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

#include "lintraj/parameterization.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

/// General element of the algebra spanned by 1, b_mu, b_mu^dag and their
/// quadratic products: scalar + b^dag r + l b + b^dag R b^ddag + b^dag D b
/// + b^T L b, with the D term normally ordered.
struct AlgebraElement {
  Complex scalar{0.0, 0.0};
  CVec r;
  CRowVec l;
  CMat R;
  CMat D;
  CMat L;

  static AlgebraElement zero(int n_modes);
};

/// (4N+2)-dimensional matrix with rows/columns labelled
/// 0, 1..2N, -2N..-1, -0. Label -nu sits at position 4N+1-nu.
struct RepMatrix {
  int n_modes = 0;
  CMat matrix;

  static int pos(int n_modes, int label, bool negative);
};

RepMatrix rep_of_element(const AlgebraElement& x);
RepMatrix rep_of_generator(const QuadraticGenerator& gen);

/// Anti-diagonal ones, 2N x 2N.
CMat anti_identity(int dim);

/// Blocks of expm(rep t). Blocks are read in storage order, so rows and
/// columns of the "-1" blocks run over labels -2N..-1.
struct PropagatorBlocks {
  CMat N11, N1m1, Nm11, Nm1m1;
  CVec N10, Nm10;
  CRowVec Nm01, Nm0m1;
  Complex c{0.0, 0.0};
  double t = 0.0;

  int n_modes() const { return static_cast<int>(N11.rows() / 2); }
};

PropagatorBlocks blocks_from_matrix(const CMat& g, double t);
PropagatorBlocks propagator_blocks(const RepMatrix& rep, double t);
CMat assemble(const PropagatorBlocks& b);

/// e^{Qt} = e^{delta} e^{b^dag R' b^ddag} e^{b^dag Dund b} e^{b^T L' b}.
struct DisentangledQuadratic {
  CMat Rp;
  CMat Lp;
  CMat Dund;
  Complex delta{0.0, 0.0};

  /// Normally ordered form: e^{b^dag Dund b} = :e^{b^dag D' b}:.
  CMat Dprime() const;
};

DisentangledQuadratic disentangle_quadratic(const PropagatorBlocks& blocks);

/// Representation of the factor product, for reconstruction checks.
CMat compose_disentangled(const DisentangledQuadratic& dq);

/// dL' = e^{-Q tau} dL e^{Q tau} for dL = b^dag dr + dl b.
std::pair<CRowVec, CVec> reorder_linear_increment(const PropagatorBlocks& blocks,
                                                  const CRowVec& dl, const CVec& dr);

/// e^{Qt} e^{b^dag r'} e^{l' b} = e^{scalar} e^{b^dag r_} e^{Qt} e^{l_ b}.
struct NormalOrderedLinear {
  CRowVec l;
  CVec r;
  Complex scalar{0.0, 0.0};
};

NormalOrderedLinear normal_order_linear(const PropagatorBlocks& blocks, const CRowVec& lp,
                                        const CVec& rp);

/// Full 2N x 2N L'' whose physical blocks parameterize the effect operator.
CMat povm_blocks(const PropagatorBlocks& blocks);

/// Homodyne-style names for the single-mode entries.
struct SingleModeBlocks {
  Complex q, s, u, v, w, x, y, z;
};
SingleModeBlocks single_mode_blocks(const PropagatorBlocks& b);

}  // namespace lintraj
