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
#include "lintraj/parameterization.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace lintraj {

CMat quadrature_from_modes(int n_modes) {
  static std::mutex mu;
  static std::map<int, CMat> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n_modes);
  if (it != cache.end()) return it->second;
  const double r = 1.0 / std::sqrt(2.0);
  CMat x = CMat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    x(2 * k, k) = r;
    x(2 * k + 1, k) = -kI * r;
  }
  cache.emplace(n_modes, x);
  return x;
}

CMat tilde_swap(int n_modes) {
  CMat s = CMat::Zero(2 * n_modes, 2 * n_modes);
  s.topRightCorner(n_modes, n_modes).setIdentity();
  s.bottomLeftCorner(n_modes, n_modes).setIdentity();
  return s;
}

CMat tilde_conjugate(const CMat& m) {
  const int n = static_cast<int>(m.rows() / 2);
  const CMat s = tilde_swap(n);
  return s * m.conjugate() * s;
}

namespace {

struct Transforms {
  CMat xu, xc, ib;
  CMat T(const CMat& a) const { return xu.transpose() * a * xu; }
  CMat t(const CMat& a) const { return xu.transpose() * a * xc; }
  CMat D(const CMat& a) const { return xu.adjoint() * a * xu; }
  CMat d(const CMat& a) const { return xu.adjoint() * a * xc; }
  CMat bar(const CMat& a) const { return ib * a * ib; }
};

}  // namespace

QuadraticGenerator compute_generator(const SystemSpec& spec) {
  const int n = spec.n_modes;
  Transforms x{quadrature_from_modes(n), quadrature_from_modes(n).conjugate(), tilde_swap(n)};
  const CMat& ib = x.ib;
  const CMat g = spec.G.cast<Complex>();
  const CMat& c = spec.C;
  const CMat& m = spec.M;
  const CMat comp_B = c.adjoint() * c;
  const CMat comp_F = c.transpose() * m.conjugate() * m.adjoint() * c;
  const CMat comp_K = c.transpose() * m.conjugate() * m.transpose() * c.conjugate();
  const CMat bc = comp_B.conjugate();
  const CMat kc = comp_K.conjugate();
  const CMat fa = comp_F.adjoint();

  QuadraticGenerator q;
  q.L = -0.5 * kI * (x.T(g) - x.bar(x.d(g))) + ib * x.D(comp_B) - 0.5 * x.T(comp_B) -
        0.5 * (x.bar(x.d(bc)) + x.T(comp_F) + x.t(comp_K) * ib + ib * x.D(kc) +
               x.bar(x.d(fa)));
  q.R = -0.5 * kI * (x.d(g) - x.bar(x.T(g))) + ib * x.t(comp_B) - 0.5 * x.d(comp_B) -
        0.5 * (x.bar(x.T(bc)) + x.d(comp_F) + x.D(comp_K) * ib + ib * x.t(kc) +
               x.bar(x.T(fa)));
  q.D = -kI * (x.D(g) - x.bar(x.t(g))) + ib * x.T(comp_B) + x.d(bc) * ib -
        0.5 * (x.D(comp_B) + x.D(bc) + x.bar(x.t(comp_B)) + x.bar(x.t(bc))) - x.D(comp_F) -
        x.d(comp_K) * ib - ib * x.T(kc) - x.bar(x.t(fa));

  // Only the symmetric parts of R and L enter b^dag R b^ddag and b^T L b.
  q.R = 0.5 * (q.R + q.R.transpose()).eval();
  q.L = 0.5 * (q.L + q.L.transpose()).eval();

  // Identity terms left over from normal ordering c^dag c and S[u]^2.
  const CMat alpha_u = m.adjoint() * c * x.xu;
  const CMat beta_u = m.adjoint() * c * x.xc;
  const CMat beta = c * x.xc;
  q.scalar = Complex(-beta.squaredNorm() - alpha_u.cwiseProduct(beta_u).sum().real(), 0.0);
  return q;
}

NoiseCouplings compute_noise_couplings(const SystemSpec& spec) {
  const int n = spec.n_modes;
  const CMat xu = quadrature_from_modes(n);
  const CMat ib = tilde_swap(n);
  const CMat mc = spec.M.adjoint() * spec.C;
  const CMat mtc = spec.M.transpose() * spec.C.conjugate();
  NoiseCouplings nc;
  nc.W_l = mc * xu + mtc * xu.conjugate() * ib;
  nc.W_r = mc * xu.conjugate() + mtc * xu * ib;
  return nc;
}

double block_structure_residual(const QuadraticGenerator& gen) {
  double r = 0.0;
  r = std::max(r, (tilde_conjugate(gen.R) - gen.R).cwiseAbs().maxCoeff());
  r = std::max(r, (tilde_conjugate(gen.L) - gen.L).cwiseAbs().maxCoeff());
  r = std::max(r, (tilde_conjugate(gen.D) - gen.D).cwiseAbs().maxCoeff());
  r = std::max(r, (gen.R - gen.R.transpose()).cwiseAbs().maxCoeff());
  r = std::max(r, (gen.L - gen.L.transpose()).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace lintraj
