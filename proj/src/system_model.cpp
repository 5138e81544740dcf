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
#include "lintraj/system_model.hpp"

#include <cmath>
#include <sstream>

namespace lintraj {

RMat symplectic_form(int n_modes) {
  RMat s = RMat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    s(2 * k, 2 * k + 1) = 1.0;
    s(2 * k + 1, 2 * k) = -1.0;
  }
  return s;
}

CMat ladder_to_quadrature(int n_modes) {
  const double r = 1.0 / std::sqrt(2.0);
  CMat x = CMat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    x(2 * k, 2 * k) = r;
    x(2 * k, 2 * k + 1) = r;
    x(2 * k + 1, 2 * k) = -kI * r;
    x(2 * k + 1, 2 * k + 1) = kI * r;
  }
  return x;
}

SystemSpec validate_spec(const SystemSpec& spec, double tol) {
  const int n = spec.n_modes;
  const int l = spec.n_channels;
  if (n <= 0 || l <= 0) throw Error(ErrorKind::DimensionMismatch, "n_modes and n_channels must be positive");
  if (spec.G.rows() != 2 * n || spec.G.cols() != 2 * n) {
    throw Error(ErrorKind::DimensionMismatch, "G must be 2N x 2N");
  }
  if (spec.C.rows() != l || spec.C.cols() != 2 * n) {
    throw Error(ErrorKind::DimensionMismatch, "C must be L x 2N");
  }
  if (spec.M.rows() != l || spec.M.cols() != 2 * l) {
    throw Error(ErrorKind::DimensionMismatch, "M must be L x 2L");
  }
  if (!spec.G.allFinite() || !spec.C.allFinite() || !spec.M.allFinite()) {
    throw Error(ErrorKind::DimensionMismatch, "non-finite entries in G, C or M");
  }
  if (spec.G != spec.G.transpose()) throw Error(ErrorKind::NonSymmetricG, "G is not symmetric");

  const CMat mm = spec.M * spec.M.adjoint();
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      if (std::abs(mm(i, j)) > tol) {
        std::ostringstream os;
        os << "M M^dag is not diagonal: entry (" << i << "," << j << ") = " << std::abs(mm(i, j));
        throw Error(ErrorKind::MeasurementSettingInvalid, os.str());
      }
    }
    const double eta = mm(i, i).real();
    if (std::abs(mm(i, i).imag()) > tol || eta < -tol || eta > 1.0 + tol) {
      std::ostringstream os;
      os << "efficiency " << i << " = " << eta << " outside [0, 1]";
      throw Error(ErrorKind::MeasurementSettingInvalid, os.str());
    }
  }
  return spec;
}

RVec efficiencies(const SystemSpec& spec) {
  return (spec.M * spec.M.adjoint()).diagonal().real();
}

SystemSpec from_fock_form(const FockFormSpec& ff, double tol) {
  const Eigen::Index dim = ff.F.rows();
  if (dim % 2 != 0 || ff.F.cols() != dim || ff.Z.cols() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "F must be 2N x 2N and Z must have 2N columns");
  }
  if ((ff.F - ff.F.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::NonHermitianF, "F is not Hermitian");
  }
  const int n = static_cast<int>(dim / 2);
  const CMat x = ladder_to_quadrature(n);
  const CMat g = x * ff.F * x.adjoint();
  if (g.imag().cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::NonHermitianF, "F does not define a real quadratic form");
  }
  SystemSpec s;
  s.n_modes = n;
  s.n_channels = static_cast<int>(ff.Z.rows());
  RMat gr = g.real();
  s.G = 0.5 * (gr + gr.transpose());
  s.C = ff.Z * x.adjoint();
  s.M = ff.M;
  return validate_spec(s, tol);
}

FockFormSpec to_fock_form(const SystemSpec& spec) {
  const CMat x = ladder_to_quadrature(spec.n_modes);
  FockFormSpec ff;
  ff.F = x.adjoint() * spec.G.cast<Complex>() * x;
  ff.Z = spec.C * x;
  ff.M = spec.M;
  return ff;
}

SystemSpec builtin_homodyne_thermal(double gamma, double k, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::MeasurementSettingInvalid, "homodyne_thermal requires eta in [0,1]");
  }
  if (!(gamma > 0.0) || !(k >= 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "homodyne_thermal requires gamma>0, K>=0");
  }
  FockFormSpec ff;
  ff.F = CMat::Zero(2, 2);
  const double pre = std::sqrt(gamma / (2.0 * k + 1.0));
  const double kk = std::sqrt(k * (k + 1.0));
  ff.Z.resize(2, 2);
  ff.Z << pre * (k + 1.0), -pre * k, pre * kk, pre * kk;
  ff.M = CMat::Zero(2, 4);
  ff.M(0, 0) = std::sqrt(eta);
  return from_fock_form(ff);
}

OptomechEffective optomech_effective(double mu, double eta, double gamma, double k_th) {
  return {mu * eta, k_th + mu * (1.0 - eta) / gamma};
}

SystemSpec builtin_optomech_squeezing(double mu, double eta, double gamma, double k_th,
                                      double chi, double theta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::MeasurementSettingInvalid, "optomech_squeezing requires eta in [0,1]");
  }
  if (!(mu >= 0.0) || !(gamma > 0.0) || !(k_th >= 0.0) || !(chi >= 0.0) || !std::isfinite(theta) ||
      !std::isfinite(mu)) {
    throw Error(ErrorKind::ParameterOutOfRange, "optomech_squeezing requires mu>=0, gamma>0, K_th>=0, chi>=0");
  }
  const auto [mu_p, k] = optomech_effective(mu, eta, gamma, k_th);
  const double w = std::sqrt(gamma * k + mu_p);
  SystemSpec s;
  s.n_modes = 1;
  s.n_channels = 3;
  s.G.resize(2, 2);
  s.G << 0.0, -chi / 2.0, -chi / 2.0, 0.0;
  s.C = CMat::Zero(3, 2);
  s.C(0, 0) = w;
  s.C(1, 1) = w;
  s.C(2, 0) = std::sqrt(gamma / 2.0);
  s.C(2, 1) = kI * std::sqrt(gamma / 2.0);
  const double m = w > 0.0 ? std::sqrt(mu_p) / w : 0.0;
  const double c = std::cos(theta / 2.0);
  const double sn = std::sin(theta / 2.0);
  s.M = CMat::Zero(3, 6);
  s.M(0, 0) = m * c;
  s.M(0, 1) = m * sn;
  s.M(1, 0) = -m * sn;
  s.M(1, 1) = m * c;
  return validate_spec(s);
}

}  // namespace lintraj
