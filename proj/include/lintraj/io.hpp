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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lintraj/fock.hpp"
#include "lintraj/system_model.hpp"
#include "lintraj/trajectory.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

using Json = nlohmann::ordered_json;

/// Initial state: vacuum, coherent (alpha per mode), fock (n per mode),
/// thermal (nbar per mode) or a custom density matrix read from a JSON file
/// in the state-dump format.
struct InitialState {
  std::string type = "vacuum";
  CVec alpha;
  std::vector<int> occupations;
  RVec nbar;
  std::string file;
};

struct RunConfig {
  SystemSpec spec;
  std::string builtin;  // empty for an explicit spec
  std::map<std::string, double> params;
  InitialState initial;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<int> fock_dim;
  std::optional<std::uint64_t> seed;
  std::optional<int> trajectories;
};

/// Explicit form: n_modes, n_channels, G, C_re, C_im, M_re, M_im (matrices
/// as arrays of rows; C_im, M_im optional). Builtin form:
/// {"builtin": {"name": "homodyne_thermal" | "optomech_squeezing", "params": {...}}}.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

CMat initial_density(const InitialState& init, const FockBasis& basis);

/// Round-trip decimal with 17 significant digits.
std::string format_double(double x);

/// 64-bit FNV-1a of the string, as 16 hex digits.
std::string stable_hash(const std::string& text);

Json to_json(const RMat& m);
Json to_json(const RVec& v);
Json complex_to_json(const CMat& m);  // {"re": [...], "im": [...]}
Json complex_to_json(const CVec& v);
RMat real_matrix_from_json(const Json& j);

/// Writes JSON with every double rendered by format_double.
std::string dump_json(const Json& j);

/// Record CSV: "# manifest <hash>", "# dt <dt>", header "trajectory,step,t,y0,...".
void write_records_csv(const std::string& path, const std::string& manifest_hash,
                       const std::vector<MeasurementRecord>& records, const std::vector<int>& indices);
/// Reads the rows of one trajectory (the first one present when index < 0).
MeasurementRecord read_record_csv(const std::string& path, int index = -1);

/// State dump: {dim, n_modes, dim_per_mode, rho_re (row-major), rho_im}.
Json state_to_json(const CMat& rho, int n_modes, int dim_per_mode);
CMat state_from_json(const Json& j);

void write_text(const std::string& path, const std::string& text);

}  // namespace lintraj
