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

#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "lintraj/types.hpp"

namespace lintraj {

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Derived>
double norm1(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int m, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace detail

/** \brief Matrix exponential by scaling and squaring with Pade approximants
 * of degree 3, 5, 7, 9 or 13 selected from the 1-norm.
 */
template <typename T>
Mat<T> expm(const Mat<T>& a) {
  using std::ldexp;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "expm: matrix not square");
  if (n == 0) return a;
  if (!a.allFinite()) throw Error(ErrorKind::MatrixExpFailure, "expm: non-finite input");

  static const double theta[] = {1.495585217958292e-2, 2.539398330063230e-1,
                                 9.504178996162932e-1, 2.097847961257068e0,
                                 5.371920351148152e0};
  static const double b3[] = {120., 60., 12., 1.};
  static const double b5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double b7[] = {17297280., 8648640., 1995840., 277200.,
                              25200.,    1512.,    56.,      1.};
  static const double b9[] = {17643225600., 8821612800., 2075673600., 302702400.,
                              30270240.,    2162160.,    110880.,     3960.,
                              90.,          1.};
  static const double b13[] = {64764752532480000., 32382376266240000.,
                               7771770303897600.,  1187353796428800.,
                               129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,
                               1323241920.,        40840800.,
                               960960.,            16380.,
                               182.,               1.};

  const Mat<T> id = Mat<T>::Identity(n, n);
  const double nrm = detail::norm1(a);

  auto pade_low = [&](const double* b, int m) {
    Mat<T> a2 = a * a;
    Mat<T> u = b[1] * id;
    Mat<T> v = b[0] * id;
    Mat<T> p = id;
    for (int k = 2; k <= m; k += 2) {
      p = p * a2;
      u += b[k + 1] * p;
      v += b[k] * p;
    }
    u = a * u;
    return Mat<T>((v - u).partialPivLu().solve(v + u));
  };

  if (nrm <= theta[0]) return pade_low(b3, 3);
  if (nrm <= theta[1]) return pade_low(b5, 5);
  if (nrm <= theta[2]) return pade_low(b7, 7);
  if (nrm <= theta[3]) return pade_low(b9, 9);

  int s = 0;
  if (nrm > theta[4]) s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta[4]))));
  const Mat<T> as = a * T(ldexp(1.0, -s));
  const Mat<T> a2 = as * as;
  const Mat<T> a4 = a2 * a2;
  const Mat<T> a6 = a4 * a2;
  const double* b = b13;
  Mat<T> u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
             b[3] * a2 + b[1] * id;
  u = as * u;
  Mat<T> v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
             b[2] * a2 + b[0] * id;
  Mat<T> r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.allFinite()) throw Error(ErrorKind::MatrixExpFailure, "expm: non-finite result");
  return r;
}

/** Principal matrix logarithm by inverse scaling and squaring on the complex
 * Schur form. Throws LogBranchFailure if an eigenvalue lies on the closed
 * negative real axis.
 */
template <typename T>
Mat<T> logm(const Mat<T>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "logm: matrix not square");
  if (n == 0) return a;
  if (!a.allFinite()) throw Error(ErrorKind::LogBranchFailure, "logm: non-finite input");

  const CMat ac = a.template cast<Complex>();
  Eigen::ComplexSchur<CMat> schur(ac);
  CMat t = schur.matrixT();
  const CMat& q = schur.matrixU();

  const double scale = std::max(1.0, detail::norm1(ac));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lam = t(i, i);
    if (std::abs(lam) <= 1e-300 ||
        (lam.real() <= 0.0 && std::abs(lam.imag()) <= 1e-14 * scale)) {
      throw Error(ErrorKind::LogBranchFailure,
                  "logm: eigenvalue on the closed negative real axis");
    }
  }

  // Upper-triangular principal square root (Bjorck-Hammarling recurrence).
  auto sqrt_tri = [n](const CMat& r) {
    CMat s = CMat::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      s(j, j) = std::sqrt(r(j, j));
      for (Eigen::Index i = j - 1; i >= 0; --i) {
        Complex acc = r(i, j);
        for (Eigen::Index k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
        s(i, j) = acc / (s(i, i) + s(j, j));
      }
    }
    return s;
  };

  const CMat id = CMat::Identity(n, n);
  int k = 0;
  while (detail::norm1(t - id) > 0.25) {
    t = sqrt_tri(t);
    if (++k > 100) throw Error(ErrorKind::LogBranchFailure, "logm: square roots did not converge");
  }

  // log(I + X) = sum_j w_j X (I + x_j X)^{-1}, Gauss-Legendre on [0, 1].
  std::vector<double> nodes, weights;
  detail::gauss_legendre_01(12, nodes, weights);
  const CMat x = t - id;
  CMat lg = CMat::Zero(n, n);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const CMat m = id + nodes[j] * x;
    lg += weights[j] * m.template triangularView<Eigen::Upper>().solve(x);
  }
  lg *= std::ldexp(1.0, k);
  CMat out = q * lg * q.adjoint();
  if constexpr (detail::is_complex<T>::value) {
    return out;
  } else {
    return out.real();
  }
}

}  // namespace lintraj
