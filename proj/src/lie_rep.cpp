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
#include "lintraj/lie_rep.hpp"

#include <cmath>

#include "lintraj/matrix_functions.hpp"

namespace lintraj {

AlgebraElement AlgebraElement::zero(int n_modes) {
  const int m = 2 * n_modes;
  AlgebraElement x;
  x.r = CVec::Zero(m);
  x.l = CRowVec::Zero(m);
  x.R = CMat::Zero(m, m);
  x.D = CMat::Zero(m, m);
  x.L = CMat::Zero(m, m);
  return x;
}

int RepMatrix::pos(int n_modes, int label, bool negative) {
  if (!negative) return label;
  return 4 * n_modes + 1 - label;
}

CMat anti_identity(int dim) {
  CMat j = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) j(i, dim - 1 - i) = 1.0;
  return j;
}

RepMatrix rep_of_element(const AlgebraElement& x) {
  const int m = static_cast<int>(x.R.rows());
  const int n = m / 2;
  RepMatrix rep;
  rep.n_modes = n;
  rep.matrix = CMat::Zero(2 * m + 2, 2 * m + 2);
  CMat& a = rep.matrix;
  auto P = [n](int label) { return RepMatrix::pos(n, label, false); };
  auto Nn = [n](int label) { return RepMatrix::pos(n, label, true); };

  for (int mu = 1; mu <= m; ++mu) {
    for (int nu = 1; nu <= m; ++nu) {
      const Complex rr = x.R(mu - 1, nu - 1);
      const Complex dd = x.D(mu - 1, nu - 1);
      const Complex ll = x.L(mu - 1, nu - 1);
      // b^dag_mu b^dag_nu -> M(mu,-nu) + M(nu,-mu)
      a(P(mu), Nn(nu)) += rr;
      a(P(nu), Nn(mu)) += rr;
      // b^dag_mu b_nu + delta/2 -> M(mu,nu) - M(-nu,-mu)
      a(P(mu), P(nu)) += dd;
      a(Nn(nu), Nn(mu)) -= dd;
      // b_mu b_nu -> -M(-mu,nu) - M(-nu,mu)
      a(Nn(mu), P(nu)) -= ll;
      a(Nn(nu), P(mu)) -= ll;
    }
    // b^dag_mu -> M(mu,0) - M(-0,-mu)
    a(P(mu), 0) += x.r(mu - 1);
    a(Nn(0), Nn(mu)) -= x.r(mu - 1);
    // b_mu -> -M(-mu,0) - M(-0,mu)
    a(Nn(mu), 0) -= x.l(mu - 1);
    a(Nn(0), P(mu)) -= x.l(mu - 1);
  }
  // 1 -> -2 M(-0,0); the D term carries -tr(D)/2 of identity.
  a(Nn(0), 0) += -2.0 * (x.scalar - 0.5 * x.D.trace());
  return rep;
}

RepMatrix rep_of_generator(const QuadraticGenerator& gen) {
  AlgebraElement x = AlgebraElement::zero(gen.n_modes());
  x.R = gen.R;
  x.D = gen.D;
  x.L = gen.L;
  x.scalar = gen.scalar;
  return rep_of_element(x);
}

PropagatorBlocks blocks_from_matrix(const CMat& g, double t) {
  const int m = static_cast<int>((g.rows() - 2) / 2);
  PropagatorBlocks b;
  b.t = t;
  b.N11 = g.block(1, 1, m, m);
  b.N1m1 = g.block(1, m + 1, m, m);
  b.Nm11 = g.block(m + 1, 1, m, m);
  b.Nm1m1 = g.block(m + 1, m + 1, m, m);
  b.N10 = g.block(1, 0, m, 1);
  b.Nm10 = g.block(m + 1, 0, m, 1);
  b.Nm01 = g.block(2 * m + 1, 1, 1, m);
  b.Nm0m1 = g.block(2 * m + 1, m + 1, 1, m);
  b.c = g(2 * m + 1, 0);
  return b;
}

PropagatorBlocks propagator_blocks(const RepMatrix& rep, double t) {
  if (t < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "propagator_blocks: t < 0");
  const CMat g = expm<Complex>(rep.matrix * Complex(t, 0.0));
  if (!g.allFinite()) throw Error(ErrorKind::MatrixExpFailure, "propagator_blocks: non-finite");
  return blocks_from_matrix(g, t);
}

CMat assemble(const PropagatorBlocks& b) {
  const int m = static_cast<int>(b.N11.rows());
  CMat g = CMat::Zero(2 * m + 2, 2 * m + 2);
  g(0, 0) = 1.0;
  g(2 * m + 1, 2 * m + 1) = 1.0;
  g.block(1, 1, m, m) = b.N11;
  g.block(1, m + 1, m, m) = b.N1m1;
  g.block(m + 1, 1, m, m) = b.Nm11;
  g.block(m + 1, m + 1, m, m) = b.Nm1m1;
  g.block(1, 0, m, 1) = b.N10;
  g.block(m + 1, 0, m, 1) = b.Nm10;
  g.block(2 * m + 1, 1, 1, m) = b.Nm01;
  g.block(2 * m + 1, m + 1, 1, m) = b.Nm0m1;
  g(2 * m + 1, 0) = b.c;
  return g;
}

namespace {

Eigen::PartialPivLU<CMat> checked_lu(const CMat& a, const char* what) {
  Eigen::PartialPivLU<CMat> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 1e-12)) {
    throw Error(ErrorKind::SingularBlock, std::string(what) + " is singular or ill-conditioned");
  }
  return lu;
}

}  // namespace

CMat DisentangledQuadratic::Dprime() const {
  return expm<Complex>(Dund) - CMat::Identity(Dund.rows(), Dund.cols());
}

DisentangledQuadratic disentangle_quadratic(const PropagatorBlocks& b) {
  const int m = static_cast<int>(b.N11.rows());
  const CMat j = anti_identity(m);
  auto lu = checked_lu(b.Nm1m1, "N_{-1-1}");
  DisentangledQuadratic dq;
  const CMat lg = logm<Complex>(b.Nm1m1);
  dq.Dund = (-(j * lg * j)).transpose();
  dq.Rp = 0.5 * b.N1m1 * lu.inverse() * j;
  dq.Lp = -0.5 * j * lu.solve(b.Nm11);
  dq.delta = 0.5 * (dq.Dund.trace() - b.c);
  return dq;
}

CMat compose_disentangled(const DisentangledQuadratic& dq) {
  const int m = static_cast<int>(dq.Rp.rows());
  const int n = m / 2;
  AlgebraElement ar = AlgebraElement::zero(n), ad = ar, al = ar, as = ar;
  ar.R = dq.Rp;
  ad.D = dq.Dund;
  al.L = dq.Lp;
  as.scalar = dq.delta;
  return expm<Complex>(rep_of_element(as).matrix) * expm<Complex>(rep_of_element(ar).matrix) *
         expm<Complex>(rep_of_element(ad).matrix) * expm<Complex>(rep_of_element(al).matrix);
}

std::pair<CRowVec, CVec> reorder_linear_increment(const PropagatorBlocks& b, const CRowVec& dl,
                                                  const CVec& dr) {
  const int m = static_cast<int>(b.N11.rows());
  const CMat j = anti_identity(m);
  // Row -0 of e^{-Q tau} X e^{Q tau}.
  CRowVec dlp = dl * b.N11 + dr.transpose() * j * b.Nm11;
  CRowVec drpt = dl * b.N1m1 * j + dr.transpose() * j * b.Nm1m1 * j;
  return {dlp, drpt.transpose()};
}

NormalOrderedLinear normal_order_linear(const PropagatorBlocks& b, const CRowVec& lp,
                                        const CVec& rp) {
  const int m = static_cast<int>(b.N11.rows());
  const CMat j = anti_identity(m);
  auto lu = checked_lu(b.Nm1m1, "N_{-1-1}");
  NormalOrderedLinear out;
  const CVec w = lu.solve(b.Nm11 * rp);
  out.l = lp - (j * w).transpose();
  out.r = b.N11 * rp - b.N1m1 * w;
  const Complex cross = (out.r.transpose() * j * b.Nm1m1 * j * out.l.transpose())(0, 0);
  out.scalar = 0.5 * (cross - (lp * rp)(0, 0));
  return out;
}

CMat povm_blocks(const PropagatorBlocks& b) {
  const int m = static_cast<int>(b.N11.rows());
  const int n = m / 2;
  const CMat j = anti_identity(m);
  const CMat ib = tilde_swap(n);
  const CMat nm11 = b.Nm11 - j * ib * b.N11;
  const CMat nm1m1 = b.Nm1m1 - j * ib * b.N1m1;
  auto lu = checked_lu(nm1m1, "transformed N_{-1-1}");
  const CMat ltot = -0.5 * j * lu.solve(nm11);
  return ltot - 0.5 * ib;
}

SingleModeBlocks single_mode_blocks(const PropagatorBlocks& b) {
  return {b.N11(0, 0), b.N11(0, 1), b.N1m1(0, 0), b.N1m1(0, 1),
          b.Nm11(0, 0), b.Nm11(0, 1), b.Nm1m1(0, 0), b.Nm1m1(0, 1)};
}

}  // namespace lintraj
