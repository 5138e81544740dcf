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

#include <vector>

#include "lintraj/system_model.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

struct MeasurementRecord;
struct GaussianEffect;

/// A = Sigma(G + Im C^dag C), B = Re M^dag C, S = Im(M^dag C) Sigma^T,
/// E = Sigma Re(C^dag C) Sigma^T.
struct KalmanMatrices {
  RMat A;
  RMat B;
  RMat S;
  RMat E;
};

KalmanMatrices kalman_matrices(const SystemSpec& spec);

/// Symmetric-ordered moments of a Gaussian state over (q_1, p_1, ...).
struct GaussianMoments {
  RVec mean;
  RMat cov;
};

/// Exact step of dP/ds = Qm + P F + F^T P - P Gm P over a fixed interval,
/// via the associated linear Hamiltonian system. The transport matrix
/// X^{-T} carries vectors obeying dv/ds = (F^T - P Gm) v.
class RiccatiPropagator {
 public:
  RiccatiPropagator(const RMat& qm, const RMat& f, const RMat& gm, double h);
  RMat step(const RMat& p, RMat* transport = nullptr) const;

 private:
  RMat phi11_, phi12_, phi21_, phi22_;
};

/// Conditioned moments after each step (entry 0 is the initial state).
/// Per step the current y_j kicks the mean by (2VB^T - S^T) y_j dt and the
/// moments then flow for dt under the y-free linear generator.
std::vector<GaussianMoments> forward_filter(const KalmanMatrices& mats,
                                            const GaussianMoments& initial,
                                            const MeasurementRecord& record);

/// One forward step; returns the post-step moments.
GaussianMoments forward_step(const KalmanMatrices& mats, const RiccatiPropagator& prop,
                             const GaussianMoments& m, const RVec& y, double dt);
RiccatiPropagator forward_propagator(const KalmanMatrices& mats, double dt);

/// Effect-operator moments in information form. Directions whose
/// information eigenvalue is below the threshold are uninformative; the
/// corresponding diagonal of V is +inf.
struct EffectMoments {
  RVec z;
  RMat Lambda;
  RVec x;
  RMat V;
  RMat informative_basis;  // columns span the informative subspace
  double tau = 0.0;
};

EffectMoments effect_moments_from_information(const RVec& z, const RMat& lambda, double tau,
                                              double threshold = 1e-12);

/// Integrates (z, Lambda) from z = 0, Lambda = 0 at t_m = J dt back to 0.
/// Optionally returns the moments at every grid time, latest first.
EffectMoments integrate_backward(const KalmanMatrices& mats, const MeasurementRecord& record,
                                 std::vector<EffectMoments>* history = nullptr);

struct CrosscheckReport {
  double mean_residual = 0.0;
  double variance_residual = 0.0;
  int informative_dims = 0;
  bool passed = false;
};

/// Compares the effect's Q-function moments with the backward filter's
/// symmetric-ordered moments (Q covariance = V + I/2) on the common
/// informative subspace. Throws CrossCheckFailure when a residual exceeds
/// tol * (1 + scale).
CrosscheckReport crosscheck_against_povm(const GaussianEffect& effect,
                                         const EffectMoments& moments, double tol = 1e-8);

}  // namespace lintraj
