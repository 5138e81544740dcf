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
#include "lintraj/fock.hpp"

#include <cmath>

namespace lintraj {

int FockBasis::dim() const {
  int d = 1;
  for (int k = 0; k < n_modes; ++k) d *= cutoff;
  return d;
}

int FockBasis::index(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != n_modes) {
    throw Error(ErrorKind::DimensionMismatch, "occupation vector length differs from mode count");
  }
  int idx = 0;
  for (int k = 0; k < n_modes; ++k) {
    if (occ[static_cast<std::size_t>(k)] < 0 || occ[static_cast<std::size_t>(k)] >= cutoff) {
      throw Error(ErrorKind::ParameterOutOfRange, "occupation outside truncation");
    }
    idx = idx * cutoff + occ[static_cast<std::size_t>(k)];
  }
  return idx;
}

std::vector<int> FockBasis::occupations(int idx) const {
  std::vector<int> occ(static_cast<std::size_t>(n_modes));
  for (int k = n_modes - 1; k >= 0; --k) {
    occ[static_cast<std::size_t>(k)] = idx % cutoff;
    idx /= cutoff;
  }
  return occ;
}

FockOperators fock_operators(int cutoff) {
  if (cutoff < 2) throw Error(ErrorKind::ParameterOutOfRange, "cutoff must be at least 2");
  FockOperators ops;
  ops.a = CMat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.adag = ops.a.adjoint();
  ops.number = ops.adag * ops.a;
  return ops;
}

SpMat annihilation(const FockBasis& basis, int mode) {
  const int dim = basis.dim();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int i = 0; i < dim; ++i) {
    auto occ = basis.occupations(i);
    const int n = occ[static_cast<std::size_t>(mode)];
    if (n == 0) continue;
    occ[static_cast<std::size_t>(mode)] = n - 1;
    trips.emplace_back(basis.index(occ), i, std::sqrt(static_cast<double>(n)));
  }
  SpMat a(dim, dim);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

SpMat creation(const FockBasis& basis, int mode) {
  return SpMat(annihilation(basis, mode).adjoint());
}

CVec coherent_state(const FockBasis& basis, const CVec& alpha) {
  if (alpha.size() != basis.n_modes) throw Error(ErrorKind::DimensionMismatch, "alpha length");
  CVec psi(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const auto occ = basis.occupations(i);
    Complex amp(1.0, 0.0);
    for (int k = 0; k < basis.n_modes; ++k) {
      const int n = occ[static_cast<std::size_t>(k)];
      amp *= std::exp(-0.5 * std::norm(alpha(k))) * std::pow(alpha(k), n) /
             std::sqrt(std::tgamma(n + 1.0));
    }
    psi(i) = amp;
  }
  return psi;
}

CVec number_state(const FockBasis& basis, const std::vector<int>& occ) {
  CVec psi = CVec::Zero(basis.dim());
  psi(basis.index(occ)) = 1.0;
  return psi;
}

CMat projector(const CVec& psi) { return psi * psi.adjoint(); }

CMat thermal_state(const FockBasis& basis, const RVec& nbar) {
  CMat rho = CMat::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const auto occ = basis.occupations(i);
    double p = 1.0;
    for (int k = 0; k < basis.n_modes; ++k) {
      const double nb = nbar(k);
      p *= std::pow(nb / (1.0 + nb), occ[static_cast<std::size_t>(k)]) / (1.0 + nb);
    }
    rho(i, i) = p;
  }
  return rho;
}

std::vector<SpMat> quadrature_operators(const FockBasis& basis) {
  std::vector<SpMat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < basis.n_modes; ++k) {
    const SpMat a = annihilation(basis, k);
    const SpMat ad = creation(basis, k);
    out.push_back(SpMat((a + ad) * s));
    out.push_back(SpMat((a - ad) * Complex(0.0, -s)));
  }
  return out;
}

}  // namespace lintraj
