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

#include <cstdint>
#include <vector>

#include "lintraj/fock.hpp"
#include "lintraj/state_engine.hpp"
#include "lintraj/system_model.hpp"
#include "lintraj/trajectory.hpp"

namespace lintraj {

/// Milstein adds the second-order Ito terms; it is strong order 1 when the
/// measured operators commute (one monitored channel in particular).
enum class SdeScheme { EulerMaruyama, Milstein };

struct IntegratorConfig {
  double dt = 1e-4;
  double T = 1.0;
  int fock_dim = 20;
  double tail_tol = 1e-8;
  std::uint64_t seed = 0;
  SdeScheme scheme = SdeScheme::EulerMaruyama;

  int steps() const;
};

/// Hamiltonian, Lindblad operators c_i and measured operators u_j = (M^dag c)_j
/// on a Fock truncation.
struct FockModel {
  FockBasis basis;
  SpMat H;
  std::vector<SpMat> c;
  std::vector<SpMat> u;
  std::vector<bool> monitored;
};

FockModel fock_model(const SystemSpec& spec, int cutoff);

/// Lindblad generator applied to rho.
CMat lindblad_rhs(const FockModel& model, const CMat& rho);

/// Linear SME driven by the record. Snapshots (if
/// requested) are taken every \p stride steps, starting with rho0.
FockDensityMatrix integrate_linear_sme(const SystemSpec& spec, const FockDensityMatrix& rho0,
                                       const MeasurementRecord& record,
                                       std::vector<CMat>* snapshots = nullptr, int stride = 1,
                                       double tail_tol = 1e-8,
                                       SdeScheme scheme = SdeScheme::EulerMaruyama);

struct NonlinearResult {
  FockDensityMatrix state;
  MeasurementRecord record;
  double max_trace_error = 0.0;
};

/// Normalized SME. The emitted record satisfies y dt = <u + u^dag> dt + dw;
/// each step is the linear step on that record followed by renormalization,
/// which expands to the corresponding step of the nonlinear equation up to
/// Ito-vanishing terms.
NonlinearResult integrate_nonlinear_sme(const SystemSpec& spec, const FockDensityMatrix& rho0,
                                        const IntegratorConfig& cfg,
                                        std::vector<CMat>* snapshots = nullptr, int stride = 1);

/// Unconditioned master equation by classical RK4 with step cfg.dt.
FockDensityMatrix integrate_me(const SystemSpec& spec, const FockDensityMatrix& rho0, double T,
                               double dt = 1e-3, double tail_tol = 1e-8);

double trace_distance(const CMat& a, const CMat& b);

}  // namespace lintraj
