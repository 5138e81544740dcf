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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lintraj {

using Scalar = double;
using Complex = std::complex<double>;

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;

using RMat = Mat<double>;
using CMat = Mat<Complex>;
using RVec = Vec<double>;
using CVec = Vec<Complex>;
using CRowVec = RowVec<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Error kinds surfaced by the library. The CLI reports them by name.
enum class ErrorKind {
  NonSymmetricG,
  MeasurementSettingInvalid,
  DimensionMismatch,
  NonHermitianF,
  ParameterOutOfRange,
  MatrixExpFailure,
  SingularBlock,
  LogBranchFailure,
  FilterDivergence,
  TruncationOverflow,
  NonHermitianResult,
  ZeroTrace,
  SingularInformationMatrix,
  RiccatiBlowup,
  CrossCheckFailure,
  ConfigError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lintraj
