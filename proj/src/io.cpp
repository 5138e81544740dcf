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
#include "lintraj/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lintraj {

namespace {

Error config_error(const std::string& msg) { return Error(ErrorKind::ConfigError, msg); }

double param(const std::map<std::string, double>& p, const std::string& key, std::optional<double> fallback = {}) {
  const auto it = p.find(key);
  if (it != p.end()) return it->second;
  if (fallback) return *fallback;
  throw config_error("builtin parameter '" + key + "' is missing");
}

CVec complex_vector(const Json& re, const Json& im, std::size_t n) {
  CVec v = CVec::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double r = re.is_array() && i < re.size() ? re[i].get<double>() : 0.0;
    const double m = im.is_array() && i < im.size() ? im[i].get<double>() : 0.0;
    v(static_cast<Eigen::Index>(i)) = Complex(r, m);
  }
  return v;
}

void render(const Json& j, std::ostringstream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      render(it.value(), os, indent, depth + 1);
    }
    os << "\n" << close << "}";
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && !e.is_structured();
    os << "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << (flat ? ", " : ",\n" + pad);
      else if (!flat) os << "\n" << pad;
      render(j[i], os, indent, depth + 1);
    }
    if (!flat && !j.empty()) os << "\n" << close;
    os << "]";
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isfinite(x)) {
      os << format_double(x);
    } else {
      os << "null";
    }
  } else {
    os << j.dump();
  }
}

}  // namespace

RMat real_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw config_error("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  RMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw config_error("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  RunConfig cfg;
  try {
    if (j.contains("builtin")) {
      const Json& b = j.at("builtin");
      cfg.builtin = b.at("name").get<std::string>();
      if (b.contains("params")) {
        for (auto it = b.at("params").begin(); it != b.at("params").end(); ++it) {
          cfg.params[it.key()] = it.value().get<double>();
        }
      }
      const auto& p = cfg.params;
      if (cfg.builtin == "homodyne_thermal") {
        cfg.spec = builtin_homodyne_thermal(param(p, "gamma"), param(p, "K", 0.0), param(p, "eta", 1.0));
      } else if (cfg.builtin == "optomech_squeezing") {
        cfg.spec = builtin_optomech_squeezing(param(p, "mu"), param(p, "eta", 1.0), param(p, "gamma"),
                                              param(p, "K_th", 0.0), param(p, "chi", 0.0),
                                              param(p, "theta", 0.0));
      } else {
        throw config_error("unknown builtin '" + cfg.builtin + "'");
      }
    } else {
      SystemSpec s;
      s.n_modes = j.at("n_modes").get<int>();
      s.n_channels = j.at("n_channels").get<int>();
      s.G = real_matrix_from_json(j.at("G"));
      const RMat cre = real_matrix_from_json(j.at("C_re"));
      const RMat cim = j.contains("C_im") ? real_matrix_from_json(j.at("C_im")) : RMat::Zero(cre.rows(), cre.cols());
      const RMat mre = real_matrix_from_json(j.at("M_re"));
      const RMat mim = j.contains("M_im") ? real_matrix_from_json(j.at("M_im")) : RMat::Zero(mre.rows(), mre.cols());
      if (cre.rows() != cim.rows() || cre.cols() != cim.cols() || mre.rows() != mim.rows() ||
          mre.cols() != mim.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "real and imaginary parts differ in shape");
      }
      s.C = cre.cast<Complex>() + kI * cim.cast<Complex>();
      s.M = mre.cast<Complex>() + kI * mim.cast<Complex>();
      cfg.spec = validate_spec(s);
    }
    if (j.contains("initial")) {
      const Json& in = j.at("initial");
      cfg.initial.type = in.at("type").get<std::string>();
      const auto n = static_cast<std::size_t>(cfg.spec.n_modes);
      if (cfg.initial.type == "coherent") {
        cfg.initial.alpha = complex_vector(in.value("alpha_re", Json::array()), in.value("alpha_im", Json::array()), n);
      } else if (cfg.initial.type == "fock") {
        cfg.initial.occupations = in.at("n").get<std::vector<int>>();
        if (cfg.initial.occupations.size() != n) throw config_error("fock initial state needs one n per mode");
      } else if (cfg.initial.type == "thermal") {
        const auto nb = in.at("nbar").get<std::vector<double>>();
        if (nb.size() != n) throw config_error("thermal initial state needs one nbar per mode");
        cfg.initial.nbar = Eigen::Map<const RVec>(nb.data(), static_cast<Eigen::Index>(nb.size()));
      } else if (cfg.initial.type == "matrix") {
        cfg.initial.file = in.at("file").get<std::string>();
      } else if (cfg.initial.type != "vacuum") {
        throw config_error("unknown initial state type '" + cfg.initial.type + "'");
      }
    }
    if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();
    if (j.contains("t_final")) cfg.t_final = j.at("t_final").get<double>();
    if (j.contains("fock_dim")) cfg.fock_dim = j.at("fock_dim").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trajectories")) cfg.trajectories = j.at("trajectories").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(e.what());
  }
  return parse_config(j);
}

CMat initial_density(const InitialState& init, const FockBasis& basis) {
  if (init.type == "vacuum") return projector(number_state(basis, std::vector<int>(static_cast<std::size_t>(basis.n_modes), 0)));
  if (init.type == "coherent") return projector(coherent_state(basis, init.alpha));
  if (init.type == "fock") return projector(number_state(basis, init.occupations));
  if (init.type == "thermal") return thermal_state(basis, init.nbar);
  if (init.type == "matrix") {
    std::ifstream in(init.file);
    if (!in) throw config_error("cannot open state file '" + init.file + "'");
    const CMat rho = state_from_json(Json::parse(in));
    if (rho.rows() != basis.dim()) throw Error(ErrorKind::DimensionMismatch, "state file does not match the Fock dimension");
    return rho;
  }
  throw config_error("unknown initial state type '" + init.type + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string stable_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const RMat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Json to_json(const RVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json complex_to_json(const CMat& m) { return {{"re", to_json(RMat(m.real()))}, {"im", to_json(RMat(m.imag()))}}; }

Json complex_to_json(const CVec& v) { return {{"re", to_json(RVec(v.real()))}, {"im", to_json(RVec(v.imag()))}}; }

std::string dump_json(const Json& j) {
  std::ostringstream os;
  render(j, os, 2, 0);
  os << "\n";
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << text;
}

void write_records_csv(const std::string& path, const std::string& manifest_hash,
                       const std::vector<MeasurementRecord>& records, const std::vector<int>& indices) {
  std::ostringstream os;
  os << "# manifest " << manifest_hash << "\n";
  const double dt = records.empty() ? 0.0 : records.front().dt;
  os << "# dt " << format_double(dt) << "\n";
  const Eigen::Index cols = records.empty() ? 0 : records.front().y.cols();
  os << "trajectory,step,t";
  for (Eigen::Index c = 0; c < cols; ++c) os << ",y" << c;
  os << "\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    for (int j = 0; j < rec.steps; ++j) {
      os << indices[r] << "," << j << "," << format_double(j * rec.dt);
      for (Eigen::Index c = 0; c < cols; ++c) os << "," << format_double(rec.y(j, c));
      os << "\n";
    }
  }
  write_text(path, os.str());
}

MeasurementRecord read_record_csv(const std::string& path, int index) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open record '" + path + "'");
  std::string line;
  double dt = 0.0;
  bool header = false;
  bool has_traj = false;
  int cols = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "dt") ss >> dt;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!header) {
      header = true;
      has_traj = !fields.empty() && fields[0] == "trajectory";
      const int lead = has_traj ? 3 : 2;
      cols = static_cast<int>(fields.size()) - lead;
      if (cols <= 0) throw config_error("record header has no y columns");
      continue;
    }
    const int lead = has_traj ? 3 : 2;
    if (static_cast<int>(fields.size()) != lead + cols) throw config_error("malformed record row");
    if (has_traj) {
      const int traj = std::stoi(fields[0]);
      if (index < 0) index = traj;
      if (traj != index) continue;
    }
    std::vector<double> y;
    for (int c = 0; c < cols; ++c) y.push_back(std::stod(fields[static_cast<std::size_t>(lead + c)]));
    rows.push_back(std::move(y));
  }
  if (!(dt > 0.0)) throw config_error("record file lacks a positive '# dt' line");
  MeasurementRecord rec;
  rec.dt = dt;
  rec.steps = static_cast<int>(rows.size());
  rec.y = RMat(rec.steps, cols);
  for (int j = 0; j < rec.steps; ++j)
    for (int c = 0; c < cols; ++c) rec.y(j, c) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
  return rec;
}

Json state_to_json(const CMat& rho, int n_modes, int dim_per_mode) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      re.push_back(rho(r, c).real());
      im.push_back(rho(r, c).imag());
    }
  }
  return {{"dim", rho.rows()}, {"n_modes", n_modes}, {"dim_per_mode", dim_per_mode}, {"rho_re", re}, {"rho_im", im}};
}

CMat state_from_json(const Json& j) {
  try {
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto& re = j.at("rho_re");
    const auto& im = j.at("rho_im");
    if (static_cast<Eigen::Index>(re.size()) != dim * dim || static_cast<Eigen::Index>(im.size()) != dim * dim) {
      throw Error(ErrorKind::DimensionMismatch, "state dump has the wrong number of entries");
    }
    CMat rho(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) {
        const auto k = static_cast<std::size_t>(r * dim + c);
        rho(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
      }
    return rho;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(e.what());
  }
}

}  // namespace lintraj
