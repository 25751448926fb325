// Copyright 2026 The avgent Authors
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

#include <optional>
#include <vector>

#include "avgent/channel.hpp"
#include "avgent/qmoments.hpp"

namespace avgent::closed {

/// Q((1...r)) for the d-dimensional depolarizing channel:
/// ((1 + (d^2-1) lambda)/d)^r + (d^2-1) ((1-lambda)/d)^r.
double depol_q_full_cycle(std::size_t d, double lambda, int r);

/// Q((1...r)) for a two-rail channel: (mu+l)^r + (mu-l)^r + (nu+k)^r + (nu-k)^r.
double tworail_q_full_cycle(double mu, double nu, double lambda, double kappa, int r);

/// Q((1...r)) for the Bloch-scaling qubit channel diag(l1, l2, l3).
double bloch_q_full_cycle(double l1, double l2, double l3, int r);

/// Regularized beta for the qubit depolarizing channel,
/// min{1, (2r - log2[(1+3l)^r + 3(1-l)^r]) / (r-1)}, lambda in [0, 1].
double depol_beta_reg(double lambda, int r);
/// r = 2 piecewise form: 1 for lambda <= 1/sqrt(3), else 2 - log2(1 + 3 lambda^2).
double depol_beta2_reg(double lambda);
/// r -> infinity: 1 for lambda <= 1/3, else 2 - log2(1 + 3 lambda).
double depol_beta_inf_reg(double lambda);

/// d-dimensional depolarizing value computed under the assumption
/// Q_max = max{d, Q((1...r))}. Only proved for d = 2; for d > 2 compare
/// against the exhaustive q_table.
double depol_beta_reg_assuming_two_candidates(std::size_t d, double lambda, int r);

/// (1/(1-r)) log2 Tr(A(I/d)^r) for measure-and-prepare channels whose
/// sigmas satisfy the trace-positivity condition at this r. Throws
/// PreconditionError when the condition fails or cannot be checked, unless
/// `override_condition` is set.
double eb_beta_reg(const Channel& ch, int r, bool override_condition = false);

struct ValidityRange {
  int r = 0;
  double c_r = 0.0;
  double d_r = 0.0;
};

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr int kBisectionMaxIterations = 200;

/// Crossing of the full-cycle value with Q(id) = 2 for the qubit depolarizing channel.
double solve_c_r(int r);
/// Boundary of Q_max(lambda)/2^r > kappa(lambda)/sqrt(2), kappa = lambda + (1-lambda)/sqrt(2).
double solve_d_r(int r);
ValidityRange validity_range(int r);
bool in_validity_range(double lambda, const ValidityRange& range);

/// lambda + (1 - lambda)/sqrt(2)
double lipschitz_kappa(double lambda);
/// sqrt(2) r kappa^n
double lipschitz_bound(double lambda, int n, int r);
/// 1 / (9 pi^3 ln 2)
double levy_constant();

struct ConcentrationReport {
  int n = 0;
  int r = 0;
  double lambda = 0.0;
  std::size_t multiplicity = 1;
  double kappa = 0.0;
  double eta_bound = 0.0;
  double k_sphere = 0.0;     // 2 * 2^n - 1
  double q_max = 0.0;
  double mean_moment = 0.0;  // E f = M_r exact
  double alpha_n = 0.0;
  std::optional<double> alpha_n_prime;  // empty when E f - alpha_n <= 0
  double epsilon_n = 0.0;
  double levy_c = 0.0;
  /// lambda = 1: alpha_n does not decay and the concentration argument is void.
  bool constant_regime = false;
};

/// Concentration quantities for f = Tr(Delta^{(x)n}(|phi><phi|)^r), with N
/// the multiplicity of Q_max.
ConcentrationReport concentration_report(double lambda, int n, int r, std::size_t multiplicity);
/// Same, taking N from the exhaustive Q table.
ConcentrationReport concentration_report(double lambda, int n, int r);

/// Generic bisection on [lo, hi]; requires a sign change.
template <typename F>
double bisect(F f, double lo, double hi, double tol = kBisectionTolerance,
              int max_iter = kBisectionMaxIterations);

}  // namespace avgent::closed

#include "avgent/detail/bisect.hpp"
