// Copyright 2026 The lintraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "lintraj/state_engine.hpp"

#include <cmath>
#include <sstream>

#include "lintraj/matrix_functions.hpp"

namespace lintraj {

FockDensityMatrix make_density(const FockBasis& basis, const CMat& rho) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix size differs from basis");
  }
  FockDensityMatrix d;
  d.n_modes = basis.n_modes;
  d.dim_per_mode = basis.cutoff;
  d.rho = rho;
  d.is_normalized = std::abs(rho.trace() - 1.0) < 1e-9;
  return d;
}

CMat EvolutionFactors::Dprime() const {
  return expm<Complex>(Dund) - CMat::Identity(Dund.rows(), Dund.cols());
}

EvolutionFactors EvolutionFactors::identity(int n) {
  EvolutionFactors f;
  f.n_modes = n;
  f.Rp = CMat::Zero(2 * n, 2 * n);
  f.Lp = CMat::Zero(2 * n, 2 * n);
  f.Dund = CMat::Zero(2 * n, 2 * n);
  f.r = CVec::Zero(2 * n);
  f.l = CRowVec::Zero(2 * n);
  return f;
}

EvolutionFactors evolution_factors(const PropagatorBlocks& blocks, const TrajectoryIntegrals& ti) {
  const DisentangledQuadratic dq = disentangle_quadratic(blocks);
  const NormalOrderedLinear no = normal_order_linear(blocks, ti.l_prime, ti.r_prime);
  EvolutionFactors f;
  f.n_modes = blocks.n_modes();
  f.t = blocks.t;
  f.Rp = dq.Rp;
  f.Lp = dq.Lp;
  f.Dund = dq.Dund;
  f.r = no.r;
  f.l = no.l;
  f.h = ti.h;
  f.delta = dq.delta;
  f.order_scalar = no.scalar;
  return f;
}

namespace {

SpMat kron_sparse(const SpMat& a, const SpMat& b) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                             static_cast<int>(ia.col() * b.cols() + ib.col()),
                             ia.value() * ib.value());
        }
      }
    }
  }
  SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat sparse_identity(int n) {
  SpMat id(n, n);
  id.setIdentity();
  return id;
}

double norm1(const SpMat& x) {
  RVec colsum = RVec::Zero(x.cols());
  for (int k = 0; k < x.outerSize(); ++k) {
    for (SpMat::InnerIterator it(x, k); it; ++it) colsum(it.col()) += std::abs(it.value());
  }
  return x.cols() ? colsum.maxCoeff() : 0.0;
}

}  // namespace

SuperoperatorLifts::SuperoperatorLifts(const FockBasis& basis) : basis_(basis) {
  const int n = basis.n_modes;
  const SpMat id = sparse_identity(basis.dim());
  ann_.resize(static_cast<std::size_t>(2 * n));
  cre_.resize(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    const SpMat a = annihilation(basis, k);
    const SpMat ad = SpMat(a.adjoint());
    ann_[static_cast<std::size_t>(k)] = kron_sparse(id, a);
    cre_[static_cast<std::size_t>(k)] = kron_sparse(id, ad);
    ann_[static_cast<std::size_t>(n + k)] = kron_sparse(SpMat(ad.transpose()), id);
    cre_[static_cast<std::size_t>(n + k)] = kron_sparse(SpMat(a.transpose()), id);
  }
}

CVec expm_action(const SpMat& x, const CVec& v) {
  const double nrm = norm1(x);
  const int s = std::max(1, static_cast<int>(std::ceil(nrm / 4.0)));
  const double inv_s = 1.0 / static_cast<double>(s);
  CVec out = v;
  CVec term(v.size());
  CVec next(v.size());
  for (int step = 0; step < s; ++step) {
    term = out;
    for (int k = 1; k < 120; ++k) {
      next.noalias() = x * term;
      term = next * (inv_s / k);
      out += term;
      const double tn = term.lpNorm<Eigen::Infinity>();
      if (tn == 0.0 || tn <= 1e-17 * out.lpNorm<Eigen::Infinity>()) break;
    }
  }
  if (!out.allFinite()) throw Error(ErrorKind::MatrixExpFailure, "exponential action overflowed");
  return out;
}

FockDensityMatrix apply_evolution(const FockDensityMatrix& rho0, const EvolutionFactors& f,
                                  const ApplyOptions& opts) {
  const SuperoperatorLifts lifts(rho0.basis());
  return apply_evolution(rho0, f, lifts, opts);
}

FockDensityMatrix apply_evolution(const FockDensityMatrix& rho0, const EvolutionFactors& f,
                                  const SuperoperatorLifts& lifts, const ApplyOptions& opts) {
  const int n = rho0.n_modes;
  if (f.n_modes != n) throw Error(ErrorKind::DimensionMismatch, "factor and state mode counts differ");
  const int dim = rho0.basis().dim();
  const int m = 2 * n;
  const int big = dim * dim;
  CVec v = Eigen::Map<const CVec>(rho0.rho.data(), big);

  SpMat lin_l(big, big), quad_l(big, big), quad_d(big, big), quad_r(big, big), lin_r(big, big);
  for (int mu = 0; mu < m; ++mu) {
    const SpMat& amu = lifts.annihilator(mu);
    const SpMat& cmu = lifts.creator(mu);
    if (f.l(mu) != 0.0) lin_l += f.l(mu) * amu;
    if (f.r(mu) != 0.0) lin_r += f.r(mu) * cmu;
    for (int nu = 0; nu < m; ++nu) {
      if (f.Lp(mu, nu) != 0.0) quad_l += f.Lp(mu, nu) * SpMat(amu * lifts.annihilator(nu));
      if (f.Dund(mu, nu) != 0.0) quad_d += f.Dund(mu, nu) * SpMat(cmu * lifts.annihilator(nu));
      if (f.Rp(mu, nu) != 0.0) quad_r += f.Rp(mu, nu) * SpMat(cmu * lifts.creator(nu));
    }
  }
  for (const SpMat* x : {&lin_l, &quad_l, &quad_d, &quad_r, &lin_r}) {
    if (x->nonZeros() > 0) v = expm_action(*x, v);
  }
  v *= std::exp(f.log_weight());

  FockDensityMatrix out = rho0;
  out.rho = Eigen::Map<const CMat>(v.data(), dim, dim);
  out.is_normalized = false;
  const double scale = out.rho.cwiseAbs().maxCoeff();
  if (hermiticity_residual(out.rho) > opts.hermitian_tol * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "evolved state is not Hermitian: residual " << hermiticity_residual(out.rho);
    throw Error(ErrorKind::NonHermitianResult, os.str());
  }
  out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
  const double tail = tail_mass(out);
  if (tail > opts.tail_tol) {
    std::ostringstream os;
    os << "population at the Fock cutoff is " << tail << " of the trace";
    throw Error(ErrorKind::TruncationOverflow, os.str());
  }
  return out;
}

namespace {

CMat matrix_power_diag(const CMat& number, Complex base) {
  CMat out = CMat::Zero(number.rows(), number.cols());
  for (Eigen::Index i = 0; i < number.rows(); ++i) out(i, i) = std::pow(base, number(i, i).real());
  return out;
}

}  // namespace

CMat apply_evolution_power_series(const CMat& rho0, const EvolutionFactors& f) {
  if (f.n_modes != 1) throw Error(ErrorKind::DimensionMismatch, "power-series route is single-mode");
  const int dcut = static_cast<int>(rho0.rows());
  const FockOperators ops = fock_operators(dcut);
  const CMat& a = ops.a;
  const CMat& ad = ops.adag;

  // e^{l b} and e^{b^T L' b}
  const CMat el = expm<Complex>(f.Lp(0, 0) * a * a + f.l(0) * a);
  const CMat er = expm<Complex>(f.Lp(1, 1) * ad * ad + f.l(1) * ad);
  CMat sigma1 = CMat::Zero(dcut, dcut);
  {
    const CMat core = el * rho0 * er;
    CMat aj = CMat::Identity(dcut, dcut);
    Complex coeff(1.0, 0.0);
    for (int j = 0; j < dcut; ++j) {
      if (j > 0) {
        aj = aj * a;
        coeff *= 2.0 * f.Lp(0, 1) / static_cast<double>(j);
      }
      sigma1 += coeff * aj * core * aj.adjoint();
    }
  }

  // :e^{b^dag D' b}:
  const CMat dp = f.Dprime();
  const CMat dl = matrix_power_diag(ops.number, 1.0 + dp(0, 0));
  const CMat dr = matrix_power_diag(ops.number, 1.0 + dp(1, 1));
  CMat sigma2 = CMat::Zero(dcut, dcut);
  {
    std::vector<CMat> apow(static_cast<std::size_t>(dcut));
    apow[0] = CMat::Identity(dcut, dcut);
    for (int j = 1; j < dcut; ++j) apow[static_cast<std::size_t>(j)] = apow[static_cast<std::size_t>(j - 1)] * a;
    Complex cm(1.0, 0.0);
    for (int mm = 0; mm < dcut; ++mm) {
      if (mm > 0) cm *= dp(0, 1) / static_cast<double>(mm);
      const CMat& am = apow[static_cast<std::size_t>(mm)];
      const CMat adm = am.adjoint();
      Complex ck(1.0, 0.0);
      for (int k = 0; k < dcut; ++k) {
        if (k > 0) ck *= dp(1, 0) / static_cast<double>(k);
        const Complex c = cm * ck;
        if (c == 0.0) break;
        const CMat& ak = apow[static_cast<std::size_t>(k)];
        sigma2 += c * adm * dl * ak * sigma1 * adm * dr * ak;
      }
    }
  }

  // e^{b^dag R' b^dag^T} and e^{b^dag r}
  const CMat rl = expm<Complex>(f.Rp(0, 0) * ad * ad + f.r(0) * ad);
  const CMat rr = expm<Complex>(f.Rp(1, 1) * a * a + f.r(1) * a);
  CMat sigma3 = CMat::Zero(dcut, dcut);
  {
    const CMat core = rl * sigma2 * rr;
    CMat an = CMat::Identity(dcut, dcut);
    Complex coeff(1.0, 0.0);
    for (int j = 0; j < dcut; ++j) {
      if (j > 0) {
        an = an * a;
        coeff *= 2.0 * f.Rp(0, 1) / static_cast<double>(j);
      }
      sigma3 += coeff * an.adjoint() * core * an;
    }
  }
  return std::exp(f.log_weight()) * sigma3;
}

std::pair<FockDensityMatrix, double> normalize_and_trace(const FockDensityMatrix& rho) {
  const Complex tr = rho.rho.trace();
  if (!(tr.real() > 0.0) || !std::isfinite(tr.real())) {
    throw Error(ErrorKind::ZeroTrace, "density matrix trace is not positive");
  }
  FockDensityMatrix out = rho;
  out.rho = rho.rho / tr.real();
  out.is_normalized = true;
  return {out, tr.real()};
}

Complex expectation(const FockDensityMatrix& rho, const CMat& op) {
  if (op.rows() != rho.rho.rows() || op.cols() != rho.rho.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "observable size differs from state");
  }
  return (op * rho.rho).trace();
}

double tail_mass(const FockDensityMatrix& rho) {
  const FockBasis basis = rho.basis();
  double top = 0.0;
  double total = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    const double p = std::abs(rho.rho(i, i).real());
    total += p;
    const auto occ = basis.occupations(i);
    for (int k = 0; k < basis.n_modes; ++k) {
      if (occ[static_cast<std::size_t>(k)] == basis.cutoff - 1) {
        top += p;
        break;
      }
    }
  }
  return total > 0.0 ? top / total : 0.0;
}

double hermiticity_residual(const CMat& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

GaussianMoments quadrature_moments(const FockDensityMatrix& rho) {
  const auto [nr, tr] = normalize_and_trace(rho);
  const auto quads = quadrature_operators(rho.basis());
  const int m = static_cast<int>(quads.size());
  GaussianMoments g;
  g.mean.resize(m);
  for (int i = 0; i < m; ++i) g.mean(i) = (quads[static_cast<std::size_t>(i)] * nr.rho).trace().real();
  g.cov.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const CMat xi_rho = quads[static_cast<std::size_t>(i)] * nr.rho;
    for (int j = 0; j < m; ++j) {
      const Complex xjxi = (quads[static_cast<std::size_t>(j)] * xi_rho).trace();
      g.cov(i, j) = xjxi.real() - g.mean(i) * g.mean(j);
    }
  }
  g.cov = 0.5 * (g.cov + g.cov.transpose()).eval();
  return g;
}

double purity(const FockDensityMatrix& rho) {
  const auto [nr, tr] = normalize_and_trace(rho);
  return (nr.rho * nr.rho).trace().real();
}

}  // namespace lintraj
