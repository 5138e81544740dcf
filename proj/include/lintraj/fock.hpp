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

#include <Eigen/Sparse>

#include "lintraj/types.hpp"

namespace lintraj {

using SpMat = Eigen::SparseMatrix<Complex>;

/// Truncated Fock basis of N modes with D levels each; mode 0 is the most
/// significant digit of the flat index.
struct FockBasis {
  int n_modes = 1;
  int cutoff = 2;

  int dim() const;
  int index(const std::vector<int>& occupations) const;
  std::vector<int> occupations(int index) const;
};

struct FockOperators {
  CMat a;
  CMat adag;
  CMat number;
};

/// Single-mode truncated ladder matrices.
FockOperators fock_operators(int cutoff);

/// Annihilator of mode k on the full basis.
SpMat annihilation(const FockBasis& basis, int mode);
SpMat creation(const FockBasis& basis, int mode);

CVec coherent_state(const FockBasis& basis, const CVec& alpha);
CVec number_state(const FockBasis& basis, const std::vector<int>& occupations);
CMat projector(const CVec& psi);

/// Thermal state with mean occupation nbar per mode.
CMat thermal_state(const FockBasis& basis, const RVec& nbar);

/// Quadratures q_k = (a_k + a_k^dag)/sqrt2, p_k = -i(a_k - a_k^dag)/sqrt2 in
/// the order (q_1, p_1, ...).
std::vector<SpMat> quadrature_operators(const FockBasis& basis);

}  // namespace lintraj
