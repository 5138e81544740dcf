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

#include "lintraj/system_model.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

/// Q = b^dag R b^ddag + b^dag D b + b^T L b + scalar, with b = (a_1..a_N,
/// a~_1..a~_N) the physical modes followed by their tilde copies. The D term
/// is normally ordered as written.
struct QuadraticGenerator {
  CMat R;
  CMat D;
  CMat L;
  Complex scalar{0.0, 0.0};

  int n_modes() const { return static_cast<int>(R.rows() / 2); }
};

/// dl = y^T dt W_l and dr^T = y^T dt W_r.
struct NoiseCouplings {
  CMat W_l;
  CMat W_r;
};

/// x = Xu b + conj(Xu) b^ddag.
CMat quadrature_from_modes(int n_modes);

/// Swaps physical and tilde halves: b~ = Ibar b.
CMat tilde_swap(int n_modes);

QuadraticGenerator compute_generator(const SystemSpec& spec);
NoiseCouplings compute_noise_couplings(const SystemSpec& spec);

/// Applies the tilde conjugation (swap halves, complex conjugate).
CMat tilde_conjugate(const CMat& m);

/// Largest deviation from the paired block structure of R, D, L.
double block_structure_residual(const QuadraticGenerator& gen);

}  // namespace lintraj
