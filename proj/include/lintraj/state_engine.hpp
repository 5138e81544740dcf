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

#include <utility>
#include <vector>

#include "lintraj/adjoint_kalman.hpp"
#include "lintraj/fock.hpp"
#include "lintraj/lie_rep.hpp"
#include "lintraj/trajectory.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

struct FockDensityMatrix {
  int n_modes = 1;
  int dim_per_mode = 2;
  CMat rho;
  bool is_normalized = false;

  FockBasis basis() const { return {n_modes, dim_per_mode}; }
};

FockDensityMatrix make_density(const FockBasis& basis, const CMat& rho);

/// Parameters of
///   V = e^{log_weight} e^{b^dag r} e^{b^dag R' b^dag^T} e^{b^dag Dund b} e^{b^T L' b} e^{l b}
/// with b = (a_1..a_N, a~_1..a~_N).
struct EvolutionFactors {
  int n_modes = 0;
  double t = 0.0;
  CMat Rp;
  CMat Lp;
  CMat Dund;
  CVec r;
  CRowVec l;
  Complex h{0.0, 0.0};
  Complex delta{0.0, 0.0};
  Complex order_scalar{0.0, 0.0};

  Complex log_weight() const { return h + delta + order_scalar; }
  CMat Dprime() const;

  static EvolutionFactors identity(int n_modes);
};

EvolutionFactors evolution_factors(const PropagatorBlocks& blocks, const TrajectoryIntegrals& ti);

/// Doubled-space ladder operators acting on column-stacked density
/// matrices: a physical operator P lifts to I (x) P, right multiplication by
/// P lifts to P^T (x) I. a~_k is right multiplication by a_k^dag.
class SuperoperatorLifts {
 public:
  explicit SuperoperatorLifts(const FockBasis& basis);

  const SpMat& annihilator(int mu) const { return ann_.at(static_cast<std::size_t>(mu)); }
  const SpMat& creator(int mu) const { return cre_.at(static_cast<std::size_t>(mu)); }
  const FockBasis& basis() const { return basis_; }

 private:
  FockBasis basis_;
  std::vector<SpMat> ann_;
  std::vector<SpMat> cre_;
};

/// e^{X} v by scaled Taylor steps; nilpotent X terminates exactly.
CVec expm_action(const SpMat& x, const CVec& v);

struct ApplyOptions {
  double tail_tol = 1e-8;
  double hermitian_tol = 1e-9;
};

/// Unnormalized rho_bar = V rho0. Throws TruncationOverflow when the
/// top-level population exceeds tail_tol of the trace.
FockDensityMatrix apply_evolution(const FockDensityMatrix& rho0, const EvolutionFactors& f,
                                  const ApplyOptions& opts = {});
FockDensityMatrix apply_evolution(const FockDensityMatrix& rho0, const EvolutionFactors& f,
                                  const SuperoperatorLifts& lifts, const ApplyOptions& opts = {});

/// Single-mode term-by-term expansion of the same factors.
CMat apply_evolution_power_series(const CMat& rho0, const EvolutionFactors& f);

std::pair<FockDensityMatrix, double> normalize_and_trace(const FockDensityMatrix& rho);

Complex expectation(const FockDensityMatrix& rho, const CMat& op);

/// Population on states with any mode at the top level, relative to the trace.
double tail_mass(const FockDensityMatrix& rho);

double hermiticity_residual(const CMat& rho);

/// Symmetric-ordered quadrature moments over (q_1, p_1, ...).
GaussianMoments quadrature_moments(const FockDensityMatrix& rho);

double purity(const FockDensityMatrix& rho);

}  // namespace lintraj
