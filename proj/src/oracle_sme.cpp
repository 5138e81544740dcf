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
#include "lintraj/oracle_sme.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lintraj {

int IntegratorConfig::steps() const {
  if (!(dt > 0.0) || !(T >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0 and T >= 0");
  if (fock_dim < 4) throw Error(ErrorKind::ParameterOutOfRange, "Fock dimension must be at least 4");
  return static_cast<int>(std::llround(T / dt));
}

FockModel fock_model(const SystemSpec& spec, int cutoff) {
  FockModel m;
  m.basis = FockBasis{spec.n_modes, cutoff};
  const auto x = quadrature_operators(m.basis);
  const int dim = m.basis.dim();
  const int n2 = 2 * spec.n_modes;
  m.H = SpMat(dim, dim);
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (spec.G(i, j) != 0.0) {
        m.H += Complex(0.5 * spec.G(i, j), 0.0) * SpMat(x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
      }
    }
  }
  for (int l = 0; l < spec.C.rows(); ++l) {
    SpMat cl(dim, dim);
    for (int k = 0; k < n2; ++k) {
      if (spec.C(l, k) != 0.0) cl += spec.C(l, k) * x[static_cast<std::size_t>(k)];
    }
    m.c.push_back(cl);
  }
  m.monitored = monitored_components(spec);
  for (int j = 0; j < spec.M.cols(); ++j) {
    SpMat uj(dim, dim);
    for (int l = 0; l < spec.M.rows(); ++l) {
      if (spec.M(l, j) != 0.0) uj += std::conj(spec.M(l, j)) * m.c[static_cast<std::size_t>(l)];
    }
    m.u.push_back(uj);
  }
  return m;
}

CMat lindblad_rhs(const FockModel& m, const CMat& rho) {
  const CMat hr = m.H * rho;
  CMat out = Complex(0.0, -1.0) * (hr - hr.adjoint());
  for (const SpMat& c : m.c) {
    const CMat cr = c * rho;
    const SpMat cd = SpMat(c.adjoint());
    const CMat cdc_rho = cd * cr;
    out += (cr * cd) - 0.5 * (cdc_rho + cdc_rho.adjoint());
  }
  return out;
}

namespace {

void check_tail(const FockBasis& basis, const CMat& rho, double tail_tol) {
  FockDensityMatrix d;
  d.n_modes = basis.n_modes;
  d.dim_per_mode = basis.cutoff;
  d.rho = rho;
  const double tail = tail_mass(d);
  if (tail > tail_tol) {
    std::ostringstream os;
    os << "oracle population at the Fock cutoff is " << tail;
    throw Error(ErrorKind::TruncationOverflow, os.str());
  }
}

CMat jump(const SpMat& u, const CMat& rho) {
  const CMat ur = u * rho;
  return ur + ur.adjoint();
}

// sum_k ydt_k J_k rho, plus 1/2 sum_kl (ydt_k ydt_l - delta_kl dt) J_k J_l rho for Milstein
CMat measurement_kick(const FockModel& m, const CMat& rho, const RVec& ydt, double dt, SdeScheme scheme) {
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  std::vector<std::size_t> active;
  std::vector<CMat> first;
  for (std::size_t k = 0; k < m.u.size(); ++k) {
    const double dy = ydt(static_cast<Eigen::Index>(k));
    if (dy == 0.0 || !m.monitored[k]) continue;
    active.push_back(k);
    first.push_back(jump(m.u[k], rho));
    out += dy * first.back();
  }
  if (scheme == SdeScheme::Milstein) {
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = 0; b < active.size(); ++b) {
        double w = ydt(static_cast<Eigen::Index>(active[a])) * ydt(static_cast<Eigen::Index>(active[b]));
        if (a == b) w -= dt;
        out += (0.5 * w) * jump(m.u[active[a]], first[b]);
      }
    }
  }
  return out;
}

}  // namespace

FockDensityMatrix integrate_linear_sme(const SystemSpec& spec, const FockDensityMatrix& rho0,
                                       const MeasurementRecord& record, std::vector<CMat>* snapshots,
                                       int stride, double tail_tol, SdeScheme scheme) {
  const FockModel m = fock_model(spec, rho0.dim_per_mode);
  CMat rho = rho0.rho;
  if (snapshots) {
    snapshots->clear();
    snapshots->push_back(rho);
  }
  for (int j = 0; j < record.steps; ++j) {
    const RVec ydt = record.y.row(j).transpose() * record.dt;
    rho += lindblad_rhs(m, rho) * record.dt + measurement_kick(m, rho, ydt, record.dt, scheme);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (snapshots && (j + 1) % stride == 0) snapshots->push_back(rho);
  }
  check_tail(m.basis, rho, tail_tol);
  FockDensityMatrix out = rho0;
  out.rho = rho;
  out.is_normalized = false;
  return out;
}

NonlinearResult integrate_nonlinear_sme(const SystemSpec& spec, const FockDensityMatrix& rho0,
                                        const IntegratorConfig& cfg, std::vector<CMat>* snapshots,
                                        int stride) {
  const int steps = cfg.steps();
  const FockModel m = fock_model(spec, rho0.dim_per_mode);
  NonlinearResult res;
  res.record.dt = cfg.dt;
  res.record.steps = steps;
  res.record.seed = cfg.seed;
  res.record.mode = Statistics::Conditioned;
  res.record.y = RMat::Zero(steps, static_cast<Eigen::Index>(m.u.size()));
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sdt = std::sqrt(cfg.dt);
  CMat rho = rho0.rho;
  if (snapshots) {
    snapshots->clear();
    snapshots->push_back(rho);
  }
  RVec ydt(m.u.size());
  for (int j = 0; j < steps; ++j) {
    ydt.setZero();
    for (std::size_t k = 0; k < m.u.size(); ++k) {
      if (!m.monitored[k]) continue;
      const double mean = jump(m.u[k], rho).trace().real();
      ydt(static_cast<Eigen::Index>(k)) = mean * cfg.dt + sdt * normal(rng);
    }
    res.record.y.row(j) = ydt.transpose() / cfg.dt;
    // linear step on the emitted record, then renormalize
    rho += lindblad_rhs(m, rho) * cfg.dt + measurement_kick(m, rho, ydt, cfg.dt, cfg.scheme);
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    res.max_trace_error = std::max(res.max_trace_error, std::abs(rho.trace().real() - 1.0));
    if (snapshots && (j + 1) % stride == 0) snapshots->push_back(rho);
  }
  check_tail(m.basis, rho, cfg.tail_tol);
  res.state = rho0;
  res.state.rho = rho;
  res.state.is_normalized = true;
  return res;
}

FockDensityMatrix integrate_me(const SystemSpec& spec, const FockDensityMatrix& rho0, double T,
                               double dt, double tail_tol) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0 and T >= 0");
  const FockModel m = fock_model(spec, rho0.dim_per_mode);
  const int steps = static_cast<int>(std::ceil(T / dt - 1e-12));
  const double h = steps > 0 ? T / steps : 0.0;
  CMat rho = rho0.rho;
  for (int j = 0; j < steps; ++j) {
    const CMat k1 = lindblad_rhs(m, rho);
    const CMat k2 = lindblad_rhs(m, rho + 0.5 * h * k1);
    const CMat k3 = lindblad_rhs(m, rho + 0.5 * h * k2);
    const CMat k4 = lindblad_rhs(m, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
  }
  check_tail(m.basis, rho, tail_tol);
  FockDensityMatrix out = rho0;
  out.rho = rho;
  return out;
}

double trace_distance(const CMat& a, const CMat& b) {
  const CMat d = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace lintraj
