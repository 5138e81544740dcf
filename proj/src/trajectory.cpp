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
#include "lintraj/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace lintraj {

std::vector<bool> monitored_components(const SystemSpec& spec) {
  std::vector<bool> mask(static_cast<std::size_t>(spec.M.cols()), false);
  for (Eigen::Index k = 0; k < spec.M.cols(); ++k) {
    mask[static_cast<std::size_t>(k)] = spec.M.col(k).cwiseAbs().maxCoeff() > 0.0;
  }
  return mask;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

MeasurementRecord sample_ostensible_record(const std::vector<bool>& monitored, double dt,
                                           int steps, std::uint64_t seed) {
  if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0, steps >= 0");
  MeasurementRecord rec;
  rec.dt = dt;
  rec.steps = steps;
  rec.seed = seed;
  rec.mode = Statistics::Ostensible;
  rec.y = RMat::Zero(steps, static_cast<Eigen::Index>(monitored.size()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(dt);
  for (int j = 0; j < steps; ++j) {
    for (std::size_t k = 0; k < monitored.size(); ++k) {
      if (monitored[k]) rec.y(j, static_cast<Eigen::Index>(k)) = s * normal(rng);
    }
  }
  return rec;
}

MeasurementRecord sample_conditioned_record_gaussian(const SystemSpec& spec,
                                                     const GaussianMoments& initial, double dt,
                                                     int steps, std::uint64_t seed,
                                                     GaussianMoments* final_moments) {
  if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0, steps >= 0");
  const auto mask = monitored_components(spec);
  const KalmanMatrices km = kalman_matrices(spec);
  const RiccatiPropagator prop = forward_propagator(km, dt);
  MeasurementRecord rec;
  rec.dt = dt;
  rec.steps = steps;
  rec.seed = seed;
  rec.mode = Statistics::Conditioned;
  rec.y = RMat::Zero(steps, static_cast<Eigen::Index>(mask.size()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(dt);
  GaussianMoments g = initial;
  for (int j = 0; j < steps; ++j) {
    const RVec mean_current = 2.0 * km.B * g.mean;
    RVec y = RVec::Zero(static_cast<Eigen::Index>(mask.size()));
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (mask[k]) {
        const auto kk = static_cast<Eigen::Index>(k);
        y(kk) = mean_current(kk) + s * normal(rng);
      }
    }
    rec.y.row(j) = y.transpose();
    g = forward_step(km, prop, g, y, dt);
    Eigen::SelfAdjointEigenSolver<RMat> es(g.cov, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
      throw Error(ErrorKind::FilterDivergence, "conditioned covariance lost positivity");
    }
  }
  if (final_moments) *final_moments = g;
  return rec;
}

double default_dt(const SystemSpec& spec) {
  const RepMatrix rep = rep_of_generator(compute_generator(spec));
  const double nrm = rep.matrix.cwiseAbs().colwise().sum().maxCoeff();
  return nrm > 0.0 ? 1e-3 / nrm : 1e-3;
}

BlockTable::BlockTable(const SystemSpec& spec, double dt, int steps)
    : dt_(dt), steps_(steps), generator_(compute_generator(spec)),
      couplings_(compute_noise_couplings(spec)) {
  if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::ParameterOutOfRange, "need dt > 0, steps >= 0");
  const RepMatrix rep = rep_of_generator(generator_);
  blocks_.reserve(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) blocks_.push_back(propagator_blocks(rep, j * dt));
}

std::pair<CRowVec, CVec> raw_increment(const NoiseCouplings& nc, const RVec& y, double dt) {
  const CVec ydt = (y * dt).cast<Complex>();
  CRowVec dl = ydt.transpose() * nc.W_l;
  CVec dr = (ydt.transpose() * nc.W_r).transpose();
  return {dl, dr};
}

TrajectoryIntegrals accumulate_integrals(const BlockTable& table, const MeasurementRecord& record) {
  if (record.steps > table.steps()) {
    throw Error(ErrorKind::DimensionMismatch, "record longer than block table");
  }
  if (std::abs(record.dt - table.dt()) > 1e-15 * std::max(1.0, table.dt())) {
    throw Error(ErrorKind::DimensionMismatch, "record dt differs from block table dt");
  }
  const int n2 = 2 * table.final().n_modes();
  TrajectoryIntegrals ti;
  ti.l_prime = CRowVec::Zero(n2);
  ti.r_prime = CVec::Zero(n2);
  for (int j = 0; j < record.steps; ++j) {
    const RVec y = record.y.row(j).transpose();
    if (y.isZero(0.0)) continue;
    const auto [dl, dr] = raw_increment(table.couplings(), y, record.dt);
    const auto [dlp, drp] = reorder_linear_increment(table.at(j), dl, dr);
    ti.h += (dlp * ti.r_prime)(0, 0) + 0.5 * (dlp * drp)(0, 0);
    ti.l_prime += dlp;
    ti.r_prime += drp;
  }
  ti.t = record.duration();
  return ti;
}

double reality_pairing_residual(const TrajectoryIntegrals& ti) {
  const Eigen::Index n = ti.l_prime.size() / 2;
  double r = (ti.l_prime.tail(n) - ti.l_prime.head(n).conjugate()).cwiseAbs().maxCoeff();
  r = std::max(r, (ti.r_prime.tail(n) - ti.r_prime.head(n).conjugate()).cwiseAbs().maxCoeff());
  return r;
}

CVec stochastic_d(const TrajectoryIntegrals& ti, const CMat& lpp) {
  const Eigen::Index n = lpp.rows() / 2;
  const CMat lphys = lpp.topLeftCorner(n, n);
  const CMat lbreve = lpp.topRightCorner(n, n);
  const CVec lp = ti.l_prime.head(n).adjoint();
  const CVec rp = ti.r_prime.head(n);
  return lp + 2.0 * lphys.adjoint() * rp.conjugate() +
         (CMat::Identity(n, n) + 2.0 * lbreve) * rp;
}

int thread_count() {
  const char* env = std::getenv("LINTRAJ_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v > 0 ? v : 1;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(thread_count(), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lintraj
