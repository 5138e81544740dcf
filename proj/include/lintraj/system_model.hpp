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
#pragma once

#include "lintraj/types.hpp"

namespace lintraj {

/// Linear bosonic system: H = x^T G x / 2, c = C x, measurement setting M.
/// Quadratures are ordered (q_1, p_1, ..., q_N, p_N).
struct SystemSpec {
  int n_modes = 0;
  int n_channels = 0;
  RMat G;
  CMat C;
  CMat M;
};

/// Same system written with ladder operators: H = alpha^dag F alpha / 2 and
/// c = Z alpha for alpha = (a_1, a_1^dag, ..., a_N, a_N^dag).
struct FockFormSpec {
  CMat F;
  CMat Z;
  CMat M;
};

/// Direct sum of [[0, 1], [-1, 0]] blocks.
RMat symplectic_form(int n_modes);

/// Block unitary taking (a, a^dag) pairs to (q, p) pairs.
CMat ladder_to_quadrature(int n_modes);

SystemSpec validate_spec(const SystemSpec& spec, double tol = 1e-12);

/// Detector efficiencies, the diagonal of M M^dag.
RVec efficiencies(const SystemSpec& spec);

SystemSpec from_fock_form(const FockFormSpec& ff, double tol = 1e-12);
FockFormSpec to_fock_form(const SystemSpec& spec);

SystemSpec builtin_homodyne_thermal(double gamma, double k, double eta);

/// Optomechanical position measurement with parametric squeezing, written
/// in the frame where the squeezing phase is moved into the measurement.
SystemSpec builtin_optomech_squeezing(double mu, double eta, double gamma, double k_th,
                                      double chi, double theta);

/// Effective strength mu*eta and bath occupation K_th + mu(1-eta)/gamma.
struct OptomechEffective {
  double mu_prime;
  double k;
};
OptomechEffective optomech_effective(double mu, double eta, double gamma, double k_th);

}  // namespace lintraj
