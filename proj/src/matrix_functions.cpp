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
#include "lintraj/matrix_functions.hpp"

namespace lintraj {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetricG: return "NonSymmetricG";
    case ErrorKind::MeasurementSettingInvalid: return "MeasurementSettingInvalid";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonHermitianF: return "NonHermitianF";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::MatrixExpFailure: return "MatrixExpFailure";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::LogBranchFailure: return "LogBranchFailure";
    case ErrorKind::FilterDivergence: return "FilterDivergence";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::NonHermitianResult: return "NonHermitianResult";
    case ErrorKind::ZeroTrace: return "ZeroTrace";
    case ErrorKind::SingularInformationMatrix: return "SingularInformationMatrix";
    case ErrorKind::RiccatiBlowup: return "RiccatiBlowup";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace detail {

void gauss_legendre_01(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace detail
}  // namespace lintraj
