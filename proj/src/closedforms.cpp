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

#include "avgent/closedforms.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "avgent/error.hpp"
#include "avgent/tensor.hpp"

namespace avgent::closed {

namespace {

void require_lambda_unit(double lambda, const char* who) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ArgumentError(std::string(who) + ": lambda must lie in [0, 1], got " +
                        std::to_string(lambda));
  }
}

void require_r(int r, int min_r, const char* who) {
  if (r < min_r) {
    throw ArgumentError(std::string(who) + ": r must be >= " + std::to_string(min_r) +
                        ", got " + std::to_string(r));
  }
}

// log2(a^r + m b^r) for a >= b >= 0, a > 0, without overflowing a^r.
double log2_two_term(double a, double m, double b, int r) {
  const double ratio = b / a;
  return r * std::log2(a) + std::log2(1.0 + m * std::pow(ratio, r));
}

}  // namespace

double depol_q_full_cycle(std::size_t d, double lambda, int r) {
  if (d < 2) throw ArgumentError("depol_q_full_cycle: d must be >= 2");
  require_r(r, 1, "depol_q_full_cycle");
  const double dd = static_cast<double>(d);
  const double m = dd * dd - 1.0;
  return std::pow((1.0 + m * lambda) / dd, r) + m * std::pow((1.0 - lambda) / dd, r);
}

double tworail_q_full_cycle(double mu, double nu, double lambda, double kappa, int r) {
  require_r(r, 1, "tworail_q_full_cycle");
  return std::pow(mu + lambda, r) + std::pow(mu - lambda, r) + std::pow(nu + kappa, r) +
         std::pow(nu - kappa, r);
}

double bloch_q_full_cycle(double l1, double l2, double l3, int r) {
  require_r(r, 1, "bloch_q_full_cycle");
  return std::pow((1.0 + l1 + l2 + l3) / 2.0, r) + std::pow((1.0 - l1 - l2 + l3) / 2.0, r) +
         std::pow((1.0 + l1 - l2 - l3) / 2.0, r) + std::pow((1.0 - l1 + l2 - l3) / 2.0, r);
}

double depol_beta_reg(double lambda, int r) {
  require_lambda_unit(lambda, "depol_beta_reg");
  require_r(r, 2, "depol_beta_reg");
  const double candidate =
      (2.0 * r - log2_two_term(1.0 + 3.0 * lambda, 3.0, 1.0 - lambda, r)) / (r - 1);
  return std::min(1.0, candidate);
}

double depol_beta2_reg(double lambda) {
  require_lambda_unit(lambda, "depol_beta2_reg");
  if (lambda <= 1.0 / std::numbers::sqrt3) return 1.0;
  return std::min(1.0, 2.0 - std::log2(1.0 + 3.0 * lambda * lambda));
}

double depol_beta_inf_reg(double lambda) {
  require_lambda_unit(lambda, "depol_beta_inf_reg");
  if (lambda <= 1.0 / 3.0) return 1.0;
  return 2.0 - std::log2(1.0 + 3.0 * lambda);
}

double depol_beta_reg_assuming_two_candidates(std::size_t d, double lambda, int r) {
  if (d < 2) throw ArgumentError("depol_beta_reg_assuming_two_candidates: d must be >= 2");
  require_r(r, 2, "depol_beta_reg_assuming_two_candidates");
  const double dd = static_cast<double>(d);
  if (!(lambda >= -1.0 / (dd * dd - 1.0) && lambda <= 1.0)) {
    throw ArgumentError("depol_beta_reg_assuming_two_candidates: lambda outside the CPTP range");
  }
  const double q_max = std::max(dd, depol_q_full_cycle(d, lambda, r));
  return (r * std::log2(dd) - std::log2(q_max)) / (r - 1);
}

double eb_beta_reg(const Channel& ch, int r, bool override_condition) {
  require_r(r, 2, "eb_beta_reg");
  if (!ch.holevo()) {
    throw PreconditionError("eb_beta_reg: channel carries no measure-and-prepare form");
  }
  const SigmaCondition cond = eb_sigma_condition(*ch.holevo(), r);
  if (cond != SigmaCondition::holds) {
    const std::string what = cond == SigmaCondition::violated
                                 ? "sigma trace-positivity condition violated"
                                 : "sigma trace-positivity condition not checked (tuple cap)";
    if (!override_condition) throw PreconditionError("eb_beta_reg: " + what);
    std::cerr << "warning: eb_beta_reg: " << what << "; result may not equal the regularized value\n";
  }
  const std::size_t d = ch.dim();
  ComplexMatrix maximally_mixed = ComplexMatrix::identity(d);
  maximally_mixed *= Complex(1.0 / static_cast<double>(d), 0.0);
  const ComplexMatrix out = apply(ch, maximally_mixed);
  double trace_power = 0.0;
  for (double e : hermitian_eigenvalues(out)) {
    if (e > 0.0) trace_power += std::pow(e, r);
  }
  return std::log2(trace_power) / (1.0 - r);
}

double solve_c_r(int r) {
  require_r(r, 2, "solve_c_r");
  return bisect([r](double l) { return depol_q_full_cycle(2, l, r) - 2.0; }, 1e-6, 1.0 - 1e-6);
}

double lipschitz_kappa(double lambda) { return lambda + (1.0 - lambda) / std::numbers::sqrt2; }

double solve_d_r(int r) {
  require_r(r, 2, "solve_d_r");
  const double c = solve_c_r(r);
  auto g = [r](double l) {
    const double q_max = std::max(2.0, depol_q_full_cycle(2, l, r));
    return q_max / std::pow(2.0, r) - lipschitz_kappa(l) / std::numbers::sqrt2;
  };
  return bisect(g, c, 1.0 - 1e-9);
}

ValidityRange validity_range(int r) {
  ValidityRange v;
  v.r = r;
  v.c_r = solve_c_r(r);
  v.d_r = solve_d_r(r);
  return v;
}

bool in_validity_range(double lambda, const ValidityRange& range) {
  return (lambda >= 0.0 && lambda <= range.c_r) || (lambda >= range.d_r && lambda <= 1.0);
}

double lipschitz_bound(double lambda, int n, int r) {
  return std::numbers::sqrt2 * r * std::pow(lipschitz_kappa(lambda), n);
}

double levy_constant() { return 1.0 / (9.0 * std::pow(std::numbers::pi, 3) * std::numbers::ln2); }

ConcentrationReport concentration_report(double lambda, int n, int r, std::size_t multiplicity) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ArgumentError("concentration_report: lambda must lie in (0, 1], got " +
                        std::to_string(lambda));
  }
  if (n < 1) throw ArgumentError("concentration_report: n must be >= 1");
  require_r(r, 2, "concentration_report");
  if (multiplicity < 1) throw ArgumentError("concentration_report: multiplicity must be >= 1");

  ConcentrationReport rep;
  rep.n = n;
  rep.r = r;
  rep.lambda = lambda;
  rep.multiplicity = multiplicity;
  rep.kappa = lipschitz_kappa(lambda);
  rep.eta_bound = lipschitz_bound(lambda, n, r);
  rep.k_sphere = 2.0 * std::pow(2.0, n) - 1.0;
  rep.q_max = std::max(2.0, depol_q_full_cycle(2, lambda, r));
  const Channel ch = build(FamilySpec{Depolarizing{2, lambda}});
  rep.mean_moment = average_moment_exact(ch, n, r).m_r;
  rep.alpha_n = 0.5 * static_cast<double>(multiplicity) * std::pow(rep.q_max / std::pow(2.0, r), n);
  const double gap = rep.mean_moment - rep.alpha_n;
  if (gap > 0.0) rep.alpha_n_prime = rep.alpha_n / (n * (r - 1) * gap);
  rep.levy_c = levy_constant();
  const double ratio = rep.alpha_n / rep.eta_bound;
  rep.epsilon_n = 4.0 * std::exp(-rep.levy_c * (rep.k_sphere + 1.0) * ratio * ratio);
  rep.constant_regime = lambda == 1.0;
  return rep;
}

ConcentrationReport concentration_report(double lambda, int n, int r) {
  require_lambda_unit(lambda, "concentration_report");
  const Channel ch = build(FamilySpec{Depolarizing{2, lambda}});
  const QTable table = q_table(ch, r);
  return concentration_report(lambda, n, r, table.multiplicity);
}

}  // namespace avgent::closed
