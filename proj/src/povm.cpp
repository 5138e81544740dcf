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
#include "lintraj/povm.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lintraj/fock.hpp"
#include "lintraj/matrix_functions.hpp"
#include "lintraj/trajectory.hpp"

namespace lintraj {

RMat effect_quadratic_form(const CMat& lpp, const CMat& lbreve) {
  const Eigen::Index n = lpp.rows();
  const RMat p = lpp.real();
  const RMat q = lpp.imag();
  const RMat hr = lbreve.real();
  const RMat hi = lbreve.imag();
  RMat a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = -2.0 * (p + hr);
  a.topRightCorner(n, n) = 2.0 * (q + hi);
  a.bottomLeftCorner(n, n) = 2.0 * (q - hi);
  a.bottomRightCorner(n, n) = 2.0 * (p - hr);
  return 0.5 * (a + a.transpose());
}

GaussianEffect effect_from_parameters(const CMat& lpp, const CMat& lbreve, const CVec& d) {
  const Eigen::Index n = lpp.rows();
  if (lpp.cols() != n || lbreve.rows() != n || lbreve.cols() != n || d.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "effect parameter shapes differ");
  }
  GaussianEffect e;
  e.Lpp = lpp;
  e.Lpp_breve = lbreve;
  e.d = d;
  e.A = effect_quadratic_form(lpp, lbreve);
  e.b.resize(2 * n);
  e.b << d.real(), d.imag();

  Eigen::SelfAdjointEigenSolver<RMat> es(e.A);
  const RVec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -1e-10 * scale) {
    throw Error(ErrorKind::SingularInformationMatrix, "effect quadratic form is not positive semidefinite");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (ev(i) > 1e-12 * scale) keep.push_back(i);
  }
  const auto rank = static_cast<Eigen::Index>(keep.size());
  e.informative_basis.resize(2 * n, rank);
  RMat pinv = RMat::Zero(2 * n, 2 * n);
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < rank; ++k) {
    const RVec u = es.eigenvectors().col(keep[static_cast<std::size_t>(k)]);
    const double lam = ev(keep[static_cast<std::size_t>(k)]);
    e.informative_basis.col(k) = u;
    pinv += u * u.transpose() / lam;
    logdet += std::log(lam);
  }
  const RVec leak = e.b - e.informative_basis * (e.informative_basis.transpose() * e.b);
  if (leak.norm() > 1e-10 * (1.0 + e.b.norm())) {
    throw Error(ErrorKind::SingularInformationMatrix,
                "d has a component along a direction without measurement information");
  }
  e.is_flat = rank == 0;
  if (n == 1 && rank == 2) {
    const double det = e.A(0, 0) * e.A(1, 1) - e.A(0, 1) * e.A(1, 0);
    e.mean_v.resize(2);
    e.mean_v << (e.A(1, 1) * e.b(0) - e.A(0, 1) * e.b(1)) / det,
        (e.A(0, 0) * e.b(1) - e.A(1, 0) * e.b(0)) / det;
  } else {
    e.mean_v = pinv * e.b;
  }
  e.covariance_v = 0.5 * pinv;
  e.alpha_mean = e.mean_v.head(n).cast<Complex>() + kI * e.mean_v.tail(n).cast<Complex>();
  e.log_normalizer = -0.5 * static_cast<double>(rank) * std::log(std::numbers::pi) - 0.5 * logdet;
  e.log_norm = e.log_normalizer - e.b.dot(pinv * e.b);
  return e;
}

GaussianEffect effect_from_blocks(const CMat& lpp_full, const CVec& d) {
  const Eigen::Index n = lpp_full.rows() / 2;
  return effect_from_parameters(lpp_full.topLeftCorner(n, n), lpp_full.topRightCorner(n, n), d);
}

double q_log_density(const GaussianEffect& e, const CVec& alpha) {
  const Eigen::Index n = alpha.size();
  if (n != e.n_modes()) throw Error(ErrorKind::DimensionMismatch, "alpha length");
  RVec v(2 * n);
  v << alpha.real(), alpha.imag();
  return e.log_norm - v.dot(e.A * v) + 2.0 * e.b.dot(v);
}

double q_density(const GaussianEffect& e, const CVec& alpha) { return std::exp(q_log_density(e, alpha)); }

CVec d_mean_given_alpha(const GaussianEffect& e, const CVec& alpha) {
  return -2.0 * e.Lpp_breve * alpha - 2.0 * e.Lpp.conjugate() * alpha.conjugate();
}

AlphaGaussian AlphaGaussian::flat(int n_modes) {
  AlphaGaussian g;
  g.mean_v = RVec::Zero(2 * n_modes);
  g.cov_v = RMat::Zero(2 * n_modes, 2 * n_modes);
  g.is_flat = true;
  return g;
}

AlphaGaussian AlphaGaussian::coherent_prior(const CVec& alpha, double variance) {
  const Eigen::Index n = alpha.size();
  AlphaGaussian g;
  g.mean_v.resize(2 * n);
  g.mean_v << alpha.real(), alpha.imag();
  g.cov_v = variance * RMat::Identity(2 * n, 2 * n);
  return g;
}

CVec AlphaGaussian::mean() const {
  const Eigen::Index n = mean_v.size() / 2;
  return mean_v.head(n).cast<Complex>() + kI * mean_v.tail(n).cast<Complex>();
}

AlphaGaussian retrodict_posterior(const GaussianEffect& e, const AlphaGaussian& prior) {
  const Eigen::Index m = e.A.rows();
  RMat prec = 2.0 * e.A;
  RVec lin = 2.0 * e.b;
  if (!prior.is_flat) {
    Eigen::LDLT<RMat> ldlt(prior.cov_v);
    const RMat pprec = ldlt.solve(RMat::Identity(m, m));
    prec += pprec;
    lin += pprec * prior.mean_v;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (prec + prec.transpose()));
  const RVec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  AlphaGaussian post;
  post.cov_v = RMat::Zero(m, m);
  RMat null_proj = RMat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const RVec u = es.eigenvectors().col(i);
    if (ev(i) > 1e-12 * scale) {
      post.cov_v += u * u.transpose() / ev(i);
    } else {
      null_proj += u * u.transpose();
    }
  }
  post.mean_v = post.cov_v * lin;
  post.is_flat = null_proj.trace() > 0.5 * static_cast<double>(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (null_proj(i, i) > 1e-9) post.cov_v(i, i) = std::numeric_limits<double>::infinity();
  }
  return post;
}

HomodyneClosedForm homodyne_closed_form(double gamma, double k, double eta, double t,
                                        const MeasurementRecord* record) {
  HomodyneClosedForm h;
  const double em = 1.0 - std::exp(-gamma * t);
  h.Lpp = -em * eta / (2.0 + 4.0 * k * (1.0 - eta * em));
  h.Lpp_breve = h.Lpp;
  h.d_prefactor = std::sqrt(gamma * eta * (1.0 + 2.0 * k)) / (1.0 + 2.0 * k * (1.0 - eta * em));
  if (record) {
    double integral = 0.0;
    for (int j = 0; j < record->steps; ++j) {
      integral += std::exp(-0.5 * gamma * j * record->dt) * record->y(j, 0) * record->dt;
    }
    h.d = h.d_prefactor * integral;
  }
  return h;
}

namespace {

double coth_term(double rate, double t) {
  if (std::isinf(t)) return rate;
  if (rate * t == 0.0) return std::numeric_limits<double>::infinity();
  return rate / std::tanh(0.5 * rate * t);
}

}  // namespace

OptomechClosedForm optomech_closed_form(double mu_prime, double gamma, double k, double chi,
                                        double t, const MeasurementRecord* record) {
  OptomechClosedForm o;
  const double base = 8.0 * mu_prime * gamma * (1.0 + 2.0 * k) + 16.0 * mu_prime * mu_prime;
  o.gamma_plus = std::sqrt((gamma + chi) * (gamma + chi) + base);
  o.gamma_minus = std::sqrt((gamma - chi) * (gamma - chi) + base);
  const double den_m = gamma + 4.0 * mu_prime - chi + coth_term(o.gamma_minus, t);
  const double den_p = gamma + 4.0 * mu_prime + chi + coth_term(o.gamma_plus, t);
  o.Lpp = 2.0 * mu_prime * (1.0 / den_m - 1.0 / den_p);
  o.Lpp_breve = -2.0 * mu_prime * (1.0 / den_m + 1.0 / den_p);
  o.sigma_x2 = 0.5 + (gamma + chi + coth_term(o.gamma_plus, t)) / (8.0 * mu_prime);
  o.sigma_p2 = 0.5 + (gamma - chi + coth_term(o.gamma_minus, t)) / (8.0 * mu_prime);
  if (record) {
    const double cp = std::sqrt(mu_prime) * (gamma - o.gamma_plus + 4.0 * mu_prime - chi + 4.0 * gamma * k) /
                      (2.0 * gamma * k - chi);
    const double cm = std::sqrt(mu_prime) * (gamma - o.gamma_minus + 4.0 * mu_prime + chi + 4.0 * gamma * k) /
                      (2.0 * gamma * k + chi);
    double ix = 0.0;
    double ip = 0.0;
    for (int j = 0; j < record->steps; ++j) {
      const double tau = j * record->dt;
      ix += std::exp(-0.5 * o.gamma_plus * tau) * record->y(j, 0) * record->dt;
      ip += std::exp(-0.5 * o.gamma_minus * tau) * record->y(j, 1) * record->dt;
    }
    o.d = Complex(cp * ix, cm * ip) / std::sqrt(2.0);
  }
  return o;
}

CMat effect_operator_fock(const GaussianEffect& e, int cutoff) {
  const int n = e.n_modes();
  const FockBasis basis{n, cutoff};
  const int dim = basis.dim();
  std::vector<CMat> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = CMat(annihilation(basis, k));
  const CMat x = logm<Complex>(CMat::Identity(n, n) + 2.0 * e.Lpp_breve);
  CMat left = CMat::Zero(dim, dim);
  CMat mid = CMat::Zero(dim, dim);
  CMat right = CMat::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const CMat& ak = a[static_cast<std::size_t>(k)];
    const CMat akd = ak.adjoint();
    left += e.d(k) * akd;
    right += std::conj(e.d(k)) * ak;
    for (int l = 0; l < n; ++l) {
      const CMat& al = a[static_cast<std::size_t>(l)];
      left += std::conj(e.Lpp(k, l)) * akd * al.adjoint();
      right += e.Lpp(k, l) * ak * al;
      mid += x(k, l) * akd * al;
    }
  }
  return std::exp(e.log_norm) * expm<Complex>(left) * expm<Complex>(mid) * expm<Complex>(right);
}

}  // namespace lintraj
