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
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "lintraj/matrix_functions.hpp"

using namespace lintraj;

TEST_CASE("expm agrees with an independent implementation across norms") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (double scale : {1e-6, 0.01, 0.3, 1.0, 4.0, 20.0}) {
    for (int n : {1, 3, 6, 10}) {
      const CMat a = scale / std::sqrt(n) *
                     CMat::NullaryExpr(n, n, [&] { return Complex(g(rng), g(rng)); });
      const CMat ref = a.exp();
      const CMat got = expm<Complex>(a);
      CAPTURE(scale);
      CAPTURE(n);
      CHECK((got - ref).norm() <= 1e-12 * ref.norm());
      const RMat ar = scale / std::sqrt(n) * RMat::NullaryExpr(n, n, [&] { return g(rng); });
      const RMat rr = ar.exp();
      CHECK((expm<double>(ar) - rr).norm() <= 1e-12 * rr.norm());
    }
  }
}

TEST_CASE("expm exact cases") {
  CHECK(expm<double>(RMat::Zero(4, 4)).isIdentity(0.0));
  RMat d = RMat::Zero(3, 3);
  d.diagonal() << -1.0, 0.5, 2.0;
  const RMat e = expm<double>(d);
  for (int i = 0; i < 3; ++i) CHECK(e(i, i) == doctest::Approx(std::exp(d(i, i))).epsilon(1e-15));
  RMat nil = RMat::Zero(3, 3);
  nil(0, 1) = 2.0;
  nil(1, 2) = 3.0;
  const RMat en = expm<double>(nil);
  CHECK(std::abs(en(0, 2) - 3.0) < 1e-15);
  RMat rot(2, 2);
  rot << 0.0, 1.0, -1.0, 0.0;
  const RMat er = expm<double>(rot * 0.7);
  CHECK(std::abs(er(0, 0) - std::cos(0.7)) < 1e-15);
  CHECK(std::abs(er(0, 1) - std::sin(0.7)) < 1e-15);
}

TEST_CASE("logm inverts expm on the principal branch") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  for (int n : {1, 2, 4, 8}) {
    for (double scale : {1e-8, 0.1, 1.0, 2.5}) {
      const CMat a = scale / std::sqrt(n) *
                     CMat::NullaryExpr(n, n, [&] { return Complex(g(rng), g(rng)); });
      const CMat back = logm<Complex>(expm<Complex>(a));
      // Spectrum of a inside |Im| < pi keeps the principal log equal to a.
      Eigen::ComplexEigenSolver<CMat> es(a);
      if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 3.0) continue;
      CAPTURE(n);
      CAPTURE(scale);
      CHECK((back - a).norm() <= 1e-11 * (1.0 + a.norm()));
    }
  }
  RMat spd(2, 2);
  spd << 2.0, 0.5, 0.5, 1.0;
  const RMat ref = spd.log();
  CHECK((logm<double>(spd) - ref).norm() < 1e-13);
}

TEST_CASE("logm rejects the branch cut") {
  RMat neg = RMat::Identity(2, 2);
  neg(0, 0) = -1.0;
  CHECK_THROWS_AS(logm<double>(neg), Error);
  try {
    logm<double>(neg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LogBranchFailure);
  }
  CHECK_THROWS_AS(logm<double>(RMat::Zero(2, 2)), Error);
}

TEST_CASE("gauss legendre rule integrates polynomials exactly") {
  std::vector<double> x, w;
  detail::gauss_legendre_01(12, x, w);
  for (int p = 0; p < 24; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
    CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
  }
}
