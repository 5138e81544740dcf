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
#include <functional>

#include "doctest.h"
#include "lintraj/system_model.hpp"

using namespace lintraj;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

SystemSpec decay_spec(double gamma, double eta) {
  SystemSpec s;
  s.n_modes = 1;
  s.n_channels = 1;
  s.G = RMat::Zero(2, 2);
  s.C.resize(1, 2);
  s.C << std::sqrt(gamma / 2), kI * std::sqrt(gamma / 2);
  s.M.resize(1, 2);
  s.M << std::sqrt(eta), 0.0;
  return s;
}

}  // namespace

TEST_CASE("single decay channel is valid") {
  const SystemSpec s = validate_spec(decay_spec(1.0, 0.4));
  CHECK(efficiencies(s)(0) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("invalid inputs are rejected with the right kind") {
  SystemSpec s = decay_spec(1.0, 0.4);
  s.M(0, 0) = 1.1;
  CHECK(kind_of([&] { validate_spec(s); }) == ErrorKind::MeasurementSettingInvalid);

  s = decay_spec(1.0, 0.4);
  s.M.resize(1, 2);
  s.M << 0.6, 0.6;
  CHECK_NOTHROW(validate_spec(s));

  SystemSpec two = decay_spec(1.0, 0.4);
  two.n_channels = 2;
  two.C = CMat::Ones(2, 2);
  two.M = CMat::Zero(2, 4);
  two.M(0, 0) = 0.5;
  two.M(1, 0) = 0.5;
  CHECK(kind_of([&] { validate_spec(two); }) == ErrorKind::MeasurementSettingInvalid);

  s = decay_spec(1.0, 0.4);
  s.G(0, 1) = 1.0;
  CHECK(kind_of([&] { validate_spec(s); }) == ErrorKind::NonSymmetricG);

  s = decay_spec(1.0, 0.4);
  s.C = CMat::Zero(1, 3);
  CHECK(kind_of([&] { validate_spec(s); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("homodyne thermal builtin") {
  const SystemSpec s = builtin_homodyne_thermal(1.0, 0.0, 1.0);
  const FockFormSpec ff = to_fock_form(s);
  CHECK((ff.Z - (CMat(2, 2) << 1.0, 0.0, 0.0, 0.0).finished()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(ff.M(0, 0) == Complex(1.0, 0.0));

  const SystemSpec h = builtin_homodyne_thermal(2.0, 1.0, 0.5);
  const CMat mm = h.M * h.M.adjoint();
  CHECK(std::abs(mm(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(mm(1, 1)) < 1e-15);
  const CMat z = to_fock_form(h).Z;
  const double pre = std::sqrt(2.0 / 3.0);
  CHECK(std::abs(z(0, 0) - 2.0 * pre) < 1e-14);
  CHECK(std::abs(z(0, 1) + pre) < 1e-14);
  CHECK(std::abs(z(1, 0) - std::sqrt(2.0) * pre) < 1e-14);
  CHECK(std::abs(z(1, 1) - std::sqrt(2.0) * pre) < 1e-14);

  CHECK_NOTHROW(builtin_homodyne_thermal(1.0, 0.0, 0.0));
  CHECK(kind_of([] { builtin_homodyne_thermal(-1.0, 0.0, 0.5); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { builtin_homodyne_thermal(1.0, 0.0, 1.5); }) == ErrorKind::MeasurementSettingInvalid);
}

TEST_CASE("fock form conversion") {
  FockFormSpec ff;
  ff.F = CMat::Zero(2, 2);
  ff.Z = (CMat(1, 2) << Complex(0.3, 0.1), Complex(-0.2, 0.5)).finished();
  ff.M = CMat::Zero(1, 2);
  SystemSpec s = from_fock_form(ff);
  CHECK(s.G.norm() == 0.0);
  CHECK((s.C - ff.Z * ladder_to_quadrature(1).adjoint()).norm() < 1e-15);

  ff.F = 1.7 * CMat::Identity(2, 2);
  s = from_fock_form(ff);
  CHECK((s.G - 1.7 * RMat::Identity(2, 2)).norm() < 1e-14);

  const double chi = 0.6;
  ff.F << 0.0, Complex(0.0, -chi / 2), Complex(0.0, chi / 2), 0.0;
  s = from_fock_form(ff);
  CHECK((s.G - (RMat(2, 2) << 0.0, -chi / 2, -chi / 2, 0.0).finished()).norm() < 1e-14);

  ff.F << 0.0, 1.0, 0.0, 0.0;
  CHECK(kind_of([&] { from_fock_form(ff); }) == ErrorKind::NonHermitianF);
}

TEST_CASE("fock form round trip and ladder unitarity") {
  SystemSpec s;
  s.n_modes = 2;
  s.n_channels = 1;
  s.G.resize(4, 4);
  s.G << 1.0, 0.2, -0.3, 0.0, 0.2, 0.5, 0.1, 0.4, -0.3, 0.1, 2.0, 0.7, 0.0, 0.4, 0.7, -1.0;
  s.C = (CMat(1, 4) << 0.1, Complex(0.0, 0.3), 0.5, -0.2).finished();
  s.M = CMat::Zero(1, 2);
  const SystemSpec back = from_fock_form(to_fock_form(s));
  CHECK((back.G - s.G).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.C - s.C).cwiseAbs().maxCoeff() < 1e-12);
  const CMat x = ladder_to_quadrature(3);
  CHECK((x * x.adjoint()).isIdentity(1e-15));
}

TEST_CASE("symplectic form") {
  for (int n = 1; n <= 4; ++n) {
    const RMat s = symplectic_form(n);
    CHECK((s + s.transpose()).norm() == 0.0);
    CHECK((s * s + RMat::Identity(2 * n, 2 * n)).norm() == 0.0);
  }
}

TEST_CASE("optomechanical builtin") {
  const SystemSpec s = builtin_optomech_squeezing(1.0, 1.0, 0.1, 0.0, 0.5, 0.0);
  const auto eff = optomech_effective(1.0, 1.0, 0.1, 0.0);
  CHECK(eff.mu_prime == 1.0);
  CHECK(eff.k == 0.0);
  CHECK(std::abs(s.C(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s.C(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(s.C(2, 0) - std::sqrt(0.05)) < 1e-15);
  CHECK(std::abs(s.C(2, 1) - Complex(0.0, std::sqrt(0.05))) < 1e-15);
  CHECK((s.G - (RMat(2, 2) << 0.0, -0.25, -0.25, 0.0).finished()).norm() < 1e-15);

  const SystemSpec sym = builtin_optomech_squeezing(0.7, 0.5, 1.0, 0.2, 0.0, 0.0);
  const RVec e = efficiencies(sym);
  CHECK(e(0) == doctest::Approx(e(1)).epsilon(1e-15));
  CHECK(sym.G.norm() == 0.0);

  // theta = pi relabels the two monitored currents: (y_x, y_p) -> (y_p, -y_x).
  const SystemSpec a = builtin_optomech_squeezing(0.7, 0.5, 1.0, 0.2, 0.3, 0.0);
  const SystemSpec b = builtin_optomech_squeezing(0.7, 0.5, 1.0, 0.2, 0.3, M_PI);
  CHECK((b.M.row(0) - a.M.row(1)).norm() < 1e-15);
  CHECK((b.M.row(1) + a.M.row(0)).norm() < 1e-15);
  CHECK((b.C - a.C).norm() == 0.0);

  CHECK_NOTHROW(builtin_optomech_squeezing(1.0, 0.0, 1.0, 0.0, 0.1, 0.0));
  CHECK(kind_of([] { builtin_optomech_squeezing(1.0, 1.2, 1.0, 0.0, 0.1, 0.0); }) ==
        ErrorKind::MeasurementSettingInvalid);
  CHECK(kind_of([] { builtin_optomech_squeezing(1.0, 0.5, -1.0, 0.0, 0.1, 0.0); }) ==
        ErrorKind::ParameterOutOfRange);
}
