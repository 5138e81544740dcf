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
#include <functional>
#include <vector>

#include "lintraj/adjoint_kalman.hpp"
#include "lintraj/lie_rep.hpp"
#include "lintraj/parameterization.hpp"
#include "lintraj/system_model.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

enum class Statistics { Ostensible, Conditioned };

/// Row j of y holds the current over [j dt, (j+1) dt).
struct MeasurementRecord {
  double dt = 0.0;
  int steps = 0;
  RMat y;
  std::uint64_t seed = 0;
  Statistics mode = Statistics::Ostensible;

  double duration() const { return dt * steps; }
};

struct TrajectoryIntegrals {
  CRowVec l_prime;
  CVec r_prime;
  Complex h{0.0, 0.0};
  double t = 0.0;
};

/// Component k of the 2L-vector y is monitored when column k of M is nonzero.
std::vector<bool> monitored_components(const SystemSpec& spec);

/// Independent stream seed for trajectory \p index of an ensemble.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

MeasurementRecord sample_ostensible_record(const std::vector<bool>& monitored, double dt,
                                           int steps, std::uint64_t seed);

/// Samples y dt = 2 B xbar dt + dw with xbar from the forward filter.
/// \p final_moments receives the conditioned moments at the end.
MeasurementRecord sample_conditioned_record_gaussian(const SystemSpec& spec,
                                                     const GaussianMoments& initial, double dt,
                                                     int steps, std::uint64_t seed,
                                                     GaussianMoments* final_moments = nullptr);

/// Step that keeps ||rep(Q)|| dt <= 1e-3.
double default_dt(const SystemSpec& spec);

/// Propagator blocks on the grid tau_j = j dt, j = 0..steps.
class BlockTable {
 public:
  BlockTable(const SystemSpec& spec, double dt, int steps);

  const PropagatorBlocks& at(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  const PropagatorBlocks& final() const { return blocks_.back(); }
  const NoiseCouplings& couplings() const { return couplings_; }
  const QuadraticGenerator& generator() const { return generator_; }
  double dt() const { return dt_; }
  int steps() const { return steps_; }

 private:
  double dt_;
  int steps_;
  QuadraticGenerator generator_;
  NoiseCouplings couplings_;
  std::vector<PropagatorBlocks> blocks_;
};

/// Linear increments of step j (1-based) before reordering.
std::pair<CRowVec, CVec> raw_increment(const NoiseCouplings& nc, const RVec& y, double dt);

/// Integrals over the first record.steps steps of the table's grid.
TrajectoryIntegrals accumulate_integrals(const BlockTable& table, const MeasurementRecord& record);

/// Largest deviation between the tilde halves of l' and r'.
double reality_pairing_residual(const TrajectoryIntegrals& ti);

/// d = l_p^dag + 2 L''^dag r_p^* + (I + 2 Lbreve'') r_p with physical halves.
CVec stochastic_d(const TrajectoryIntegrals& ti, const CMat& lpp);

/// Worker count from LINTRAJ_THREADS (default 1).
int thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace lintraj
