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
#include "lintraj/adjoint_kalman.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lintraj/matrix_functions.hpp"
#include "lintraj/povm.hpp"
#include "lintraj/trajectory.hpp"

namespace lintraj {

KalmanMatrices kalman_matrices(const SystemSpec& spec) {
  const RMat sig = symplectic_form(spec.n_modes);
  const CMat cc = spec.C.adjoint() * spec.C;
  const CMat mc = spec.M.adjoint() * spec.C;
  KalmanMatrices k;
  k.A = sig * (spec.G + cc.imag());
  k.B = mc.real();
  k.S = mc.imag() * sig.transpose();
  k.E = sig * cc.real() * sig.transpose();
  k.E = 0.5 * (k.E + k.E.transpose()).eval();
  return k;
}

RiccatiPropagator::RiccatiPropagator(const RMat& qm, const RMat& f, const RMat& gm, double h) {
  const Eigen::Index n = f.rows();
  RMat ham(2 * n, 2 * n);
  ham << -f, gm, qm, f.transpose();
  const RMat phi = expm<double>(ham * h);
  phi11_ = phi.topLeftCorner(n, n);
  phi12_ = phi.topRightCorner(n, n);
  phi21_ = phi.bottomLeftCorner(n, n);
  phi22_ = phi.bottomRightCorner(n, n);
}

RMat RiccatiPropagator::step(const RMat& p, RMat* transport) const {
  const RMat x = phi11_ + phi12_ * p;
  const RMat y = phi21_ + phi22_ * p;
  Eigen::PartialPivLU<RMat> lu(x);
  RMat out = lu.solve(y.transpose()).transpose();
  out = 0.5 * (out + out.transpose()).eval();
  if (!out.allFinite()) throw Error(ErrorKind::RiccatiBlowup, "Riccati step produced non-finite entries");
  if (transport) *transport = lu.inverse().transpose();
  return out;
}

RiccatiPropagator forward_propagator(const KalmanMatrices& m, double dt) {
  const RMat f = m.A + 2.0 * m.S.transpose() * m.B;
  const RMat g = m.E - m.S.transpose() * m.S;
  return RiccatiPropagator(g, f.transpose(), 4.0 * m.B.transpose() * m.B, dt);
}

GaussianMoments forward_step(const KalmanMatrices& m, const RiccatiPropagator& prop,
                             const GaussianMoments& g, const RVec& y, double dt) {
  const RMat gain = 2.0 * g.cov * m.B.transpose() - m.S.transpose();
  GaussianMoments out;
  const RVec kicked = g.mean + gain * (y * dt);
  RMat transport;
  out.cov = prop.step(g.cov, &transport);
  out.mean = transport * kicked;
  return out;
}

std::vector<GaussianMoments> forward_filter(const KalmanMatrices& mats,
                                            const GaussianMoments& initial,
                                            const MeasurementRecord& record) {
  const RiccatiPropagator prop = forward_propagator(mats, record.dt);
  std::vector<GaussianMoments> out;
  out.reserve(static_cast<std::size_t>(record.steps) + 1);
  out.push_back(initial);
  for (int j = 0; j < record.steps; ++j) {
    out.push_back(forward_step(mats, prop, out.back(), record.y.row(j).transpose(), record.dt));
  }
  return out;
}

EffectMoments effect_moments_from_information(const RVec& z, const RMat& lambda, double tau,
                                              double threshold) {
  const Eigen::Index n = lambda.rows();
  EffectMoments em;
  em.z = z;
  em.Lambda = lambda;
  em.tau = tau;
  Eigen::SelfAdjointEigenSolver<RMat> es(lambda);
  const RVec ev = es.eigenvalues();
  const double cut = threshold * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i) > cut) keep.push_back(i);
  }
  em.informative_basis.resize(n, static_cast<Eigen::Index>(keep.size()));
  RMat pinv = RMat::Zero(n, n);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const RVec u = es.eigenvectors().col(keep[k]);
    em.informative_basis.col(static_cast<Eigen::Index>(k)) = u;
    pinv += u * u.transpose() / ev(keep[k]);
  }
  em.x = pinv * z;
  em.V = pinv;
  const RMat proj = em.informative_basis * em.informative_basis.transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (1.0 - proj(i, i) > 1e-9) em.V(i, i) = std::numeric_limits<double>::infinity();
  }
  return em;
}

EffectMoments integrate_backward(const KalmanMatrices& m, const MeasurementRecord& record,
                                 std::vector<EffectMoments>* history) {
  const Eigen::Index n = m.A.rows();
  const RMat f = m.A + 2.0 * m.S.transpose() * m.B;
  const RMat g = m.E - m.S.transpose() * m.S;
  const RiccatiPropagator prop(4.0 * m.B.transpose() * m.B, f, g, record.dt);
  RMat lambda = RMat::Zero(n, n);
  RVec z = RVec::Zero(n);
  if (history) {
    history->clear();
    history->push_back(effect_moments_from_information(z, lambda, record.dt * record.steps));
  }
  for (int j = record.steps; j >= 1; --j) {
    RMat transport;
    lambda = prop.step(lambda, &transport);
    z = transport * z;
    const RVec y = record.y.row(j - 1).transpose();
    z += (2.0 * m.B.transpose() + lambda * m.S.transpose()) * y * record.dt;
    if (!z.allFinite()) throw Error(ErrorKind::RiccatiBlowup, "backward filter mean diverged");
    if (history) history->push_back(effect_moments_from_information(z, lambda, (j - 1) * record.dt));
  }
  return effect_moments_from_information(z, lambda, 0.0);
}

CrosscheckReport crosscheck_against_povm(const GaussianEffect& effect, const EffectMoments& em,
                                         double tol) {
  const int n = static_cast<int>(effect.d.size());
  // Quadrature moments of the effect's Q-function.
  RMat perm = RMat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    perm(2 * k, k) = 1.0;
    perm(2 * k + 1, n + k) = 1.0;
  }
  const RMat cov_q = perm * effect.covariance_v * perm.transpose() * 2.0;
  const RVec mean_q = std::sqrt(2.0) * perm * effect.mean_v;
  const RMat basis = em.informative_basis;
  CrosscheckReport rep;
  rep.informative_dims = static_cast<int>(basis.cols());
  if (basis.cols() == 0) {
    rep.passed = true;
    return rep;
  }
  const RVec dm = basis.transpose() * (mean_q - em.x);
  const RMat vfin = em.V.array().isFinite().select(em.V, 0.0);
  const RMat dv = basis.transpose() * (cov_q - vfin - 0.5 * RMat::Identity(2 * n, 2 * n)) * basis;
  rep.mean_residual = dm.cwiseAbs().maxCoeff();
  rep.variance_residual = dv.cwiseAbs().maxCoeff();
  const double mscale = 1.0 + (basis.transpose() * em.x).cwiseAbs().maxCoeff();
  const double vscale = 1.0 + (basis.transpose() * vfin * basis).cwiseAbs().maxCoeff();
  rep.passed = rep.mean_residual <= tol * mscale && rep.variance_residual <= tol * vscale;
  if (!rep.passed) {
    std::ostringstream os;
    os << "effect/backward-filter mismatch: mean residual " << rep.mean_residual
       << ", variance residual " << rep.variance_residual;
    throw Error(ErrorKind::CrossCheckFailure, os.str());
  }
  return rep;
}

}  // namespace lintraj
