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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "lintraj/adjoint_kalman.hpp"
#include "lintraj/io.hpp"
#include "lintraj/oracle_sme.hpp"
#include "lintraj/parameterization.hpp"
#include "lintraj/povm.hpp"
#include "lintraj/state_engine.hpp"
#include "lintraj/trajectory.hpp"

using namespace lintraj;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "lintraj 0.1.0";

struct Options {
  std::string command;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<int> trajectories;
  std::optional<int> fock_dim;
  std::string out = "lintraj_out";
  bool compare_oracle = false;
  std::string retrodict;
  std::string record;
  int record_index = -1;
  int save_records = 16;
};

struct Run {
  Options opt;
  RunConfig cfg;
  std::uint64_t seed = 1;
  double dt = 0.0;
  double t_final = 1.0;
  int trajectories = 1;
  int fock_dim = 20;
  Json manifest;
  std::string hash;

  int steps() const { return static_cast<int>(std::llround(t_final / dt)); }
  fs::path path(const std::string& name) const { return fs::path(opt.out) / name; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Run prepare(const Options& opt, bool uses_dt = true) {
  Run r;
  r.opt = opt;
  r.cfg = load_config(opt.config);
  r.seed = opt.seed.value_or(r.cfg.seed.value_or(1));
  r.t_final = opt.t_final.value_or(r.cfg.t_final.value_or(1.0));
  r.dt = opt.dt.value_or(r.cfg.dt.value_or(uses_dt ? default_dt(r.cfg.spec) : 1e-3));
  r.trajectories = opt.trajectories.value_or(r.cfg.trajectories.value_or(1));
  r.fock_dim = opt.fock_dim.value_or(r.cfg.fock_dim.value_or(r.cfg.spec.n_modes == 1 ? 20 : 8));
  if (!(r.dt > 0.0) || !(r.t_final >= 0.0) || r.trajectories < 1 || r.fock_dim < 2) {
    throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0, t_final >= 0, trajectories >= 1, fock_dim >= 2");
  }
  r.manifest = {{"command", opt.command},
                {"config", opt.config},
                {"config_hash", stable_hash(read_file(opt.config))},
                {"seed", r.seed},
                {"dt", r.dt},
                {"t_final", r.t_final},
                {"trajectories", r.trajectories},
                {"fock_dim", r.fock_dim},
                {"out", opt.out},
                {"compare_oracle", opt.compare_oracle},
                {"retrodict", opt.retrodict},
                {"record", opt.record},
                {"record_index", opt.record_index},
                {"version", kVersion}};
  r.hash = stable_hash(r.manifest.dump());
  return r;
}

void open_output(const Run& r) {
  fs::create_directories(r.opt.out);
  Json m = r.manifest;
  m["manifest_hash"] = r.hash;
  write_text(r.path("manifest.json").string(), dump_json(m));
}

FockDensityMatrix initial_state(const Run& r) {
  if (r.cfg.spec.n_modes > 2) {
    throw Error(ErrorKind::ParameterOutOfRange, "Fock-space state application supports at most two modes");
  }
  const FockBasis basis{r.cfg.spec.n_modes, r.fock_dim};
  return make_density(basis, initial_density(r.cfg.initial, basis));
}

MeasurementRecord obtain_record(const Run& r) {
  MeasurementRecord rec;
  if (!r.opt.record.empty()) {
    rec = read_record_csv(r.opt.record, r.opt.record_index);
    if (rec.y.cols() != 2 * r.cfg.spec.n_channels) {
      throw Error(ErrorKind::DimensionMismatch, "record has the wrong number of columns for this system");
    }
  } else {
    rec = sample_ostensible_record(monitored_components(r.cfg.spec), r.dt, r.steps(), r.seed);
  }
  return rec;
}

Json observables(const FockDensityMatrix& rho) {
  const auto basis = rho.basis();
  Json n = Json::array(), a = Json::array();
  for (int k = 0; k < basis.n_modes; ++k) {
    const CMat ak = CMat(annihilation(basis, k));
    n.push_back(expectation(rho, ak.adjoint() * ak).real());
    a.push_back(complex_to_json(CVec(CVec::Constant(1, expectation(rho, ak)))));
  }
  const auto qm = quadrature_moments(rho);
  return {{"number", n}, {"a", a}, {"quadrature_mean", to_json(qm.mean)}, {"quadrature_cov", to_json(qm.cov)},
          {"purity", purity(rho)}};
}

void print(const Json& j) { std::cout << dump_json(j); }

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& opt) {
  const RunConfig cfg = load_config(opt.config);
  const auto gen = compute_generator(cfg.spec);
  print({{"status", "ok"},
         {"builtin", cfg.builtin},
         {"n_modes", cfg.spec.n_modes},
         {"n_channels", cfg.spec.n_channels},
         {"efficiencies", to_json(efficiencies(cfg.spec))},
         {"monitored_components", monitored_components(cfg.spec)},
         {"block_symmetry_residual", block_structure_residual(gen)}});
  return 0;
}

// ---------------------------------------------------------------- simulate

struct TrajectoryResult {
  std::uint64_t seed = 0;
  double trace = 0.0;
  Json integrals;
  std::vector<double> number;
  GaussianMoments moments;
  double oracle_distance = std::numeric_limits<double>::quiet_NaN();
  CMat state;
  MeasurementRecord record;
};

int cmd_simulate(const Options& opt) {
  const Run r = prepare(opt);
  open_output(r);
  const FockDensityMatrix rho0 = initial_state(r);
  const FockBasis basis = rho0.basis();
  const SuperoperatorLifts lifts(basis);
  const BlockTable table(r.cfg.spec, r.dt, r.steps());
  const CMat lpp = povm_blocks(table.final());
  const auto mask = monitored_components(r.cfg.spec);
  const int saved = std::min(r.trajectories, r.opt.save_records);
  std::vector<CMat> number_ops;
  for (int k = 0; k < basis.n_modes; ++k) {
    const CMat ak = CMat(annihilation(basis, k));
    number_ops.push_back(ak.adjoint() * ak);
  }

  std::vector<TrajectoryResult> results(static_cast<std::size_t>(r.trajectories));
  parallel_for(r.trajectories, [&](int i) {
    TrajectoryResult& res = results[static_cast<std::size_t>(i)];
    res.seed = trajectory_seed(r.seed, static_cast<std::uint64_t>(i));
    MeasurementRecord rec = sample_ostensible_record(mask, r.dt, r.steps(), res.seed);
    const auto ti = accumulate_integrals(table, rec);
    const auto out = apply_evolution(rho0, evolution_factors(table.final(), ti), lifts);
    const auto [normed, trace] = normalize_and_trace(out);
    res.trace = trace;
    for (const CMat& n : number_ops) res.number.push_back(expectation(normed, n).real());
    res.moments = quadrature_moments(normed);
    res.integrals = {{"trajectory", i},
                     {"seed", res.seed},
                     {"h", complex_to_json(CVec(CVec::Constant(1, ti.h)))},
                     {"l_prime", complex_to_json(CVec(ti.l_prime.transpose()))},
                     {"r_prime", complex_to_json(ti.r_prime)},
                     {"d", complex_to_json(stochastic_d(ti, lpp))}};
    if (r.opt.compare_oracle) {
      const auto lin = integrate_linear_sme(r.cfg.spec, rho0, rec);
      res.oracle_distance = trace_distance(normed.rho, normalize_and_trace(lin).first.rho);
    }
    if (i < saved) {
      res.state = normed.rho;
      res.record = std::move(rec);
    }
  });

  std::vector<MeasurementRecord> records;
  std::vector<int> indices;
  fs::create_directories(r.path("states"));
  for (int i = 0; i < saved; ++i) {
    records.push_back(results[static_cast<std::size_t>(i)].record);
    indices.push_back(i);
    Json s = state_to_json(results[static_cast<std::size_t>(i)].state, basis.n_modes, basis.cutoff);
    s["manifest_hash"] = r.hash;
    s["trajectory"] = i;
    write_text(r.path("states/traj_" + std::to_string(i) + ".json").string(), dump_json(s));
  }
  write_records_csv(r.path("records.csv").string(), r.hash, records, indices);

  Json integrals = Json::array();
  std::ostringstream csv;
  csv << "# manifest " << r.hash << "\n";
  csv << "trajectory,seed,trace";
  for (int k = 0; k < basis.n_modes; ++k) csv << ",n" << k;
  for (int k = 0; k < 2 * basis.n_modes; ++k) csv << ",mean_x" << k;
  for (int a = 0; a < 2 * basis.n_modes; ++a)
    for (int b = a; b < 2 * basis.n_modes; ++b) csv << ",cov_" << a << "_" << b;
  csv << ",oracle_trace_distance\n";
  std::vector<double> weighted(static_cast<std::size_t>(basis.n_modes), 0.0), weighted2 = weighted;
  double max_distance = 0.0;
  for (int i = 0; i < r.trajectories; ++i) {
    const auto& res = results[static_cast<std::size_t>(i)];
    integrals.push_back(res.integrals);
    csv << i << "," << res.seed << "," << format_double(res.trace);
    for (double n : res.number) csv << "," << format_double(n);
    for (Eigen::Index k = 0; k < res.moments.mean.size(); ++k) csv << "," << format_double(res.moments.mean(k));
    for (Eigen::Index a = 0; a < res.moments.cov.rows(); ++a)
      for (Eigen::Index b = a; b < res.moments.cov.cols(); ++b) csv << "," << format_double(res.moments.cov(a, b));
    csv << "," << (r.opt.compare_oracle ? format_double(res.oracle_distance) : "") << "\n";
    for (std::size_t k = 0; k < weighted.size(); ++k) {
      const double w = res.trace * res.number[k];
      weighted[k] += w;
      weighted2[k] += w * w;
    }
    if (r.opt.compare_oracle) max_distance = std::max(max_distance, res.oracle_distance);
  }
  write_text(r.path("moments.csv").string(), csv.str());
  write_text(r.path("integrals.json").string(),
             dump_json({{"manifest_hash", r.hash}, {"trajectories", integrals}}));

  Json me_estimate = Json::array();
  const double nt = r.trajectories;
  for (std::size_t k = 0; k < weighted.size(); ++k) {
    const double mean = weighted[k] / nt;
    const double var = std::max(0.0, weighted2[k] / nt - mean * mean);
    me_estimate.push_back({{"mode", k}, {"weighted_number", mean}, {"standard_error", std::sqrt(var / nt)}});
  }
  Json summary = {{"manifest_hash", r.hash},
                  {"trajectories", r.trajectories},
                  {"steps", r.steps()},
                  {"weighted_average", me_estimate}};
  if (r.opt.compare_oracle) summary["max_oracle_trace_distance"] = max_distance;
  write_text(r.path("summary.json").string(), dump_json(summary));
  print(summary);
  return 0;
}

// ---------------------------------------------------------------- povm

AlphaGaussian parse_prior(const std::string& text, int n_modes) {
  if (text == "flat") return AlphaGaussian::flat(n_modes);
  std::vector<double> v;
  std::stringstream ss(text);
  std::string f;
  while (std::getline(ss, f, ',')) v.push_back(std::stod(f));
  if (n_modes != 1 || v.size() != 3 || !(v[2] > 0.0)) {
    throw Error(ErrorKind::ConfigError, "--retrodict expects 'flat' or 're,im,variance' (single mode)");
  }
  CVec a(1);
  a << Complex(v[0], v[1]);
  return AlphaGaussian::coherent_prior(a, v[2]);
}

int cmd_povm(const Options& opt) {
  const Run r = prepare(opt);
  open_output(r);
  const MeasurementRecord rec = obtain_record(r);
  const SystemSpec& spec = r.cfg.spec;
  const BlockTable table(spec, rec.dt, rec.steps);
  const CMat lpp = povm_blocks(table.final());
  const auto ti = accumulate_integrals(table, rec);
  const GaussianEffect e = effect_from_blocks(lpp, stochastic_d(ti, lpp));
  const double t = rec.duration();

  Json out = {{"manifest_hash", r.hash},
              {"t", t},
              {"Lpp", complex_to_json(e.Lpp)},
              {"Lpp_breve", complex_to_json(e.Lpp_breve)},
              {"d", complex_to_json(e.d)},
              {"alpha_mean", complex_to_json(e.alpha_mean)},
              {"log_norm", e.log_norm},
              {"is_flat", e.is_flat},
              {"informative_dims", e.informative_basis.cols()},
              {"covariance_v", to_json(e.covariance_v)}};
  const auto& p = r.cfg.params;
  if (r.cfg.builtin == "homodyne_thermal") {
    const auto c = homodyne_closed_form(p.at("gamma"), p.count("K") ? p.at("K") : 0.0,
                                        p.count("eta") ? p.at("eta") : 1.0, t, &rec);
    const double residual = std::max({std::abs(e.Lpp(0, 0) - c.Lpp), std::abs(e.Lpp_breve(0, 0) - c.Lpp_breve),
                                      std::abs(e.d(0) - c.d)});
    out["closed_form"] = {{"Lpp", c.Lpp}, {"Lpp_breve", c.Lpp_breve}, {"d", c.d}, {"residual", residual}};
    out["closed_form_residual"] = residual;
  } else if (r.cfg.builtin == "optomech_squeezing") {
    const auto eff = optomech_effective(p.at("mu"), p.count("eta") ? p.at("eta") : 1.0, p.at("gamma"),
                                        p.count("K_th") ? p.at("K_th") : 0.0);
    const auto c = optomech_closed_form(eff.mu_prime, p.at("gamma"), eff.k, p.count("chi") ? p.at("chi") : 0.0, t);
    const double sx = e.is_flat ? std::numeric_limits<double>::infinity() : 2.0 * e.covariance_v(0, 0);
    const double sp = e.is_flat ? std::numeric_limits<double>::infinity() : 2.0 * e.covariance_v(1, 1);
    out["closed_form"] = {{"Lpp", c.Lpp},
                          {"Lpp_breve", c.Lpp_breve},
                          {"sigma_x2", c.sigma_x2},
                          {"sigma_p2", c.sigma_p2},
                          {"residual", std::max(std::abs(e.Lpp(0, 0) - c.Lpp), std::abs(e.Lpp_breve(0, 0) - c.Lpp_breve))}};
    out["sigma_x2"] = sx;
    out["sigma_p2"] = sp;
  }
  if (!r.opt.retrodict.empty()) {
    const AlphaGaussian post = retrodict_posterior(e, parse_prior(r.opt.retrodict, spec.n_modes));
    out["posterior"] = {{"mean", complex_to_json(post.mean())}, {"cov_v", to_json(post.cov_v)}, {"is_flat", post.is_flat}};
  }
  write_text(r.path("povm.json").string(), dump_json(out));
  print(out);
  return 0;
}

// ---------------------------------------------------------------- adjoint

int cmd_adjoint(const Options& opt) {
  const Run r = prepare(opt);
  open_output(r);
  const MeasurementRecord rec = obtain_record(r);
  const SystemSpec& spec = r.cfg.spec;
  std::vector<EffectMoments> history;
  const auto em = integrate_backward(kalman_matrices(spec), rec, &history);

  std::ostringstream csv;
  const int n2 = 2 * spec.n_modes;
  csv << "# manifest " << r.hash << "\n" << "tau";
  for (int k = 0; k < n2; ++k) csv << ",z" << k;
  for (int a = 0; a < n2; ++a)
    for (int b = a; b < n2; ++b) csv << ",Lambda_" << a << "_" << b;
  for (int k = 0; k < n2; ++k) csv << ",x" << k;
  for (int a = 0; a < n2; ++a)
    for (int b = a; b < n2; ++b) csv << ",V_" << a << "_" << b;
  csv << "\n";
  const auto cell = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("inf"); };
  for (const auto& h : history) {
    csv << format_double(h.tau);
    for (int k = 0; k < n2; ++k) csv << "," << cell(h.z(k));
    for (int a = 0; a < n2; ++a)
      for (int b = a; b < n2; ++b) csv << "," << cell(h.Lambda(a, b));
    for (int k = 0; k < n2; ++k) csv << "," << cell(h.x(k));
    for (int a = 0; a < n2; ++a)
      for (int b = a; b < n2; ++b) csv << "," << cell(h.V(a, b));
    csv << "\n";
  }
  write_text(r.path("moments.csv").string(), csv.str());

  const BlockTable table(spec, rec.dt, rec.steps);
  const CMat lpp = povm_blocks(table.final());
  const GaussianEffect e = effect_from_blocks(lpp, stochastic_d(accumulate_integrals(table, rec), lpp));
  const double tol = 1e-8;
  const CrosscheckReport rep = crosscheck_against_povm(e, em, std::numeric_limits<double>::infinity());
  const bool passed = rep.mean_residual < tol && rep.variance_residual < tol;
  Json out = {{"manifest_hash", r.hash},
              {"t", rec.duration()},
              {"x", to_json(em.x)},
              {"informative_dims", rep.informative_dims},
              {"mean_residual", rep.mean_residual},
              {"variance_residual", rep.variance_residual},
              {"tolerance", tol},
              {"passed", passed}};
  if (r.cfg.builtin == "homodyne_thermal") {
    const auto& p = r.cfg.params;
    const double gamma = p.at("gamma"), k = p.count("K") ? p.at("K") : 0.0, eta = p.count("eta") ? p.at("eta") : 1.0;
    const double vxx = 0.5 * (1 + 2 * k) * (1.0 / (eta * (1.0 - std::exp(-gamma * rec.duration()))) - 1.0);
    out["Vxx"] = em.V(0, 0);
    out["Vxx_closed_form"] = vxx;
  }
  write_text(r.path("crosscheck.json").string(), dump_json(out));
  print(out);
  if (!passed) throw Error(ErrorKind::CrossCheckFailure, "adjoint and POVM moments disagree");
  return 0;
}

// ---------------------------------------------------------------- me

int cmd_me(const Options& opt) {
  const Run r = prepare(opt, false);
  open_output(r);
  const FockDensityMatrix rho0 = initial_state(r);
  const auto out = integrate_me(r.cfg.spec, rho0, r.t_final, r.dt);
  Json res = {{"manifest_hash", r.hash}, {"t", r.t_final}, {"trace", out.rho.trace().real()}};
  res["observables"] = observables(out);
  Json s = state_to_json(out.rho, out.n_modes, out.dim_per_mode);
  s["manifest_hash"] = r.hash;
  write_text(r.path("me_state.json").string(), dump_json(s));
  write_text(r.path("me.json").string(), dump_json(res));
  print(res);
  return 0;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const Options& opt) {
  Options o = opt;
  if (!o.dt) o.dt = 1e-4;
  const Run r = prepare(o);
  open_output(r);
  const FockDensityMatrix rho0 = initial_state(r);
  IntegratorConfig ic;
  ic.dt = r.dt;
  ic.T = r.t_final;
  ic.fock_dim = r.fock_dim;
  ic.seed = r.seed;
  const auto nl = integrate_nonlinear_sme(r.cfg.spec, rho0, ic);
  const auto lin = integrate_linear_sme(r.cfg.spec, rho0, nl.record);
  const BlockTable table(r.cfg.spec, nl.record.dt, nl.record.steps);
  const auto pipe = apply_evolution(rho0, evolution_factors(table.final(), accumulate_integrals(table, nl.record)));
  const CMat p = normalize_and_trace(pipe).first.rho;
  const CMat l = normalize_and_trace(lin).first.rho;
  Json out = {{"manifest_hash", r.hash},
              {"steps", nl.record.steps},
              {"pipeline_vs_linear_sme", trace_distance(p, l)},
              {"pipeline_vs_nonlinear_sme", trace_distance(p, nl.state.rho)},
              {"linear_vs_nonlinear_sme", trace_distance(l, nl.state.rho)},
              {"nonlinear_max_trace_error", nl.max_trace_error}};
  write_records_csv(r.path("records.csv").string(), r.hash, {nl.record}, {0});
  write_text(r.path("compare.json").string(), dump_json(out));
  print(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear quantum trajectories for bosonic systems under continuous measurement"};
  app.require_subcommand(1);
  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON system configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "master seed");
    sub->add_option("--dt", opt.dt, "time step");
    sub->add_option("--t-final", opt.t_final, "final time");
    sub->add_option("--fock-dim", opt.fock_dim, "Fock cutoff per mode");
    sub->add_option("--out", opt.out, "output directory");
  };
  auto* validate = app.add_subcommand("validate", "check a configuration");
  validate->add_option("--config", opt.config, "JSON system configuration")->required()->check(CLI::ExistingFile);
  auto* simulate = app.add_subcommand("simulate", "sample ostensible records and evolve the initial state");
  add_common(simulate);
  simulate->add_option("--trajectories", opt.trajectories, "number of trajectories");
  simulate->add_flag("--compare-oracle", opt.compare_oracle, "also integrate the linear SME on each record");
  simulate->add_option("--save-records", opt.save_records, "trajectories whose records and states are written");
  auto* povm = app.add_subcommand("povm", "effect operator of a record");
  add_common(povm);
  povm->add_option("--record", opt.record, "record CSV (sampled when absent)");
  povm->add_option("--record-index", opt.record_index, "trajectory index inside the record CSV");
  povm->add_option("--retrodict", opt.retrodict, "prior: 'flat' or 're,im,variance'");
  auto* adjoint = app.add_subcommand("adjoint", "backward filter and cross-check against the effect");
  add_common(adjoint);
  adjoint->add_option("--record", opt.record, "record CSV (sampled when absent)");
  adjoint->add_option("--record-index", opt.record_index, "trajectory index inside the record CSV");
  auto* me = app.add_subcommand("me", "unconditioned master equation");
  add_common(me);
  auto* compare = app.add_subcommand("compare", "pipeline against the Fock-space SME oracles");
  add_common(compare);

  CLI11_PARSE(app, argc, argv);
  opt.command = app.get_subcommands().front()->get_name();
  try {
    if (opt.command == "validate") return cmd_validate(opt);
    if (opt.command == "simulate") return cmd_simulate(opt);
    if (opt.command == "povm") return cmd_povm(opt);
    if (opt.command == "adjoint") return cmd_adjoint(opt);
    if (opt.command == "me") return cmd_me(opt);
    if (opt.command == "compare") return cmd_compare(opt);
  } catch (const Error& e) {
    print({{"error", error_kind_name(e.kind())}, {"message", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    print({{"error", "Internal"}, {"message", e.what()}});
    return 2;
  }
  return 1;
}
