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

#include "lintraj/lie_rep.hpp"
#include "lintraj/types.hpp"

namespace lintraj {

struct MeasurementRecord;

/// Gaussian effect operator
///   W_d = e^{log_norm} e^{a^dag d + a^dag L''^* a^dag^T} e^{a^dag log(1 + 2 Lbreve'') a}
///         e^{a^T L'' a + d^dag a}.
/// Real coordinates v = (Re alpha, Im alpha); <alpha|W_d|alpha> is
/// exp(log_norm - v^T A v + 2 b^T v) with b = (Re d, Im d).
struct GaussianEffect {
  CMat Lpp;
  CMat Lpp_breve;
  CVec d;
  CVec alpha_mean;
  double log_norm = 0.0;

  RMat A;
  RVec b;
  RVec mean_v;
  RMat covariance_v;       // (2A)^+ : covariance of v under the flat-prior posterior
  RMat informative_basis;  // range of A
  double log_normalizer = 0.0;  // log N alone
  bool is_flat = false;

  int n_modes() const { return static_cast<int>(d.size()); }
};

/// Real symmetric A with 2 Re(alpha^T Lpp alpha) + 2 alpha^dag Lbreve alpha = -v^T A v.
RMat effect_quadratic_form(const CMat& lpp, const CMat& lbreve);

GaussianEffect effect_from_parameters(const CMat& lpp, const CMat& lbreve, const CVec& d);

/// Uses the physical blocks of the full L'' returned by povm_blocks.
GaussianEffect effect_from_blocks(const CMat& lpp_full, const CVec& d);

double q_log_density(const GaussianEffect& effect, const CVec& alpha);
double q_density(const GaussianEffect& effect, const CVec& alpha);

/// Mean of d given a coherent amplitude: the d solving the mean relation
/// -2 Lbreve'' alpha - 2 L''^* alpha^* = d.
CVec d_mean_given_alpha(const GaussianEffect& effect, const CVec& alpha);

/// Gaussian over alpha in real coordinates v = (Re alpha, Im alpha).
struct AlphaGaussian {
  RVec mean_v;
  RMat cov_v;
  bool is_flat = false;

  static AlphaGaussian flat(int n_modes);
  static AlphaGaussian coherent_prior(const CVec& alpha, double variance);
  CVec mean() const;
};

/// Product of the flat-prior likelihood exp(-v^T A v + 2 b^T v) with the
/// prior. Directions carrying neither prior nor measurement information stay
/// at infinite variance.
AlphaGaussian retrodict_posterior(const GaussianEffect& effect, const AlphaGaussian& prior);

struct HomodyneClosedForm {
  double Lpp = 0.0;
  double Lpp_breve = 0.0;
  double d_prefactor = 0.0;
  double d = 0.0;
};

/// Homodyne thermal POVM parameters; d uses the left-endpoint sum of
/// e^{-gamma tau/2} y_x(tau) dt when a record is supplied.
HomodyneClosedForm homodyne_closed_form(double gamma, double k, double eta, double t,
                                        const MeasurementRecord* record = nullptr);

struct OptomechClosedForm {
  double Lpp = 0.0;
  double Lpp_breve = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double sigma_x2 = 0.0;
  double sigma_p2 = 0.0;
  Complex d{0.0, 0.0};
};

/// Optomechanical squeezing POVM parameters in the pipeline's sign
/// convention. t may be +infinity. d uses the large-t kernels with record
/// columns 0 and 1 as y_x and y_p (theta = 0 labelling).
OptomechClosedForm optomech_closed_form(double mu_prime, double gamma, double k, double chi,
                                        double t, const MeasurementRecord* record = nullptr);

/// W_d on an N-mode Fock truncation (dimension cutoff^N), built factor by factor.
CMat effect_operator_fock(const GaussianEffect& effect, int cutoff);

}  // namespace lintraj
