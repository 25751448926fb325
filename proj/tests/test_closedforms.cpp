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

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "avgent/channel.hpp"
#include "avgent/closedforms.hpp"
#include "avgent/error.hpp"
#include "avgent/qmoments.hpp"
#include "avgent/random.hpp"
#include "avgent/symgroup.hpp"

using namespace avgent;
using namespace avgent::closed;

namespace {

Channel depol(double lambda, std::size_t d = 2) { return build(FamilySpec{Depolarizing{d, lambda}}); }

}  // namespace

TEST_CASE("full-cycle Q values") {
  CHECK(depol_q_full_cycle(2, 1.0, 2) == doctest::Approx(4.0));
  for (double l : {0.0, 0.3, 0.9}) CHECK(depol_q_full_cycle(2, l, 1) == doctest::Approx(2.0));
  CHECK(depol_q_full_cycle(3, 0.0, 2) == doctest::Approx(1.0));
  const Channel d3 = depol(0.0, 3);
  CHECK(trace(matmul(d3.choi(), d3.choi())).real() == doctest::Approx(1.0));
  for (double l : {0.1, 0.5, 0.8}) {
    for (int r = 1; r <= 5; ++r) {
      CHECK(tworail_q_full_cycle((1 + l) / 2, (1 - l) / 2, l, 0.0, r) ==
            doctest::Approx(depol_q_full_cycle(2, l, r)));
      CHECK(bloch_q_full_cycle(l, l, l, r) == doctest::Approx(depol_q_full_cycle(2, l, r)));
      const double mu = 0.5 + l / 3;
      CHECK(tworail_q_full_cycle(mu, 1 - mu, 0.0, 0.0, r) ==
            doctest::Approx(2 * std::pow(mu, r) + 2 * std::pow(1 - mu, r)));
    }
  }
  CHECK(bloch_q_full_cycle(0, 0, 0, 3) == doctest::Approx(0.5));
  CHECK(bloch_q_full_cycle(1, 0, 0, 2) == doctest::Approx(2.0));
}

TEST_CASE("closed full-cycle values match the Choi route on built channels") {
  const TwoRail t{0.7, 0.3, 0.45, 0.2};
  const Channel tr = build(FamilySpec{t});
  for (int r = 1; r <= 5; ++r) {
    CHECK(std::abs(q_via_choi(tr, Permutation::full_cycle(r)).real() -
                   tworail_q_full_cycle(t.mu, t.nu, t.lambda, t.kappa, r)) < 1e-10);
  }
  const Channel b = build(FamilySpec{BlochScaling{0.3, -0.2, 0.5}});
  for (int r = 1; r <= 5; ++r) {
    CHECK(std::abs(q_via_choi(b, Permutation::full_cycle(r)).real() -
                   bloch_q_full_cycle(0.3, -0.2, 0.5, r)) < 1e-10);
  }
  for (int r = 2; r <= 4; ++r) {
    CHECK(std::abs(q_via_choi(depol(0.4, 3), Permutation::full_cycle(r)).real() -
                   depol_q_full_cycle(3, 0.4, r)) < 1e-10);
  }
}

TEST_CASE("Bloch channels on the entanglement-breaking frontier have full-cycle Q at most 2") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    double l[3];
    double s = 0.0;
    for (double& x : l) {
      x = rng.uniform() * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      s += std::abs(x);
    }
    for (double& x : l) x *= (1 - 1e-6) / s;
    for (int r = 2; r <= 6; ++r) CHECK(bloch_q_full_cycle(l[0], l[1], l[2], r) <= 2 + 1e-6);
  }
}

TEST_CASE("depolarizing regularized beta") {
  for (int r : {2, 3, 5, 50, 1000}) {
    CHECK(depol_beta_reg(0.2, r) == 1.0);
    CHECK(depol_beta_reg(1.0 / 3.0, r) == doctest::Approx(1.0));
    CHECK(depol_beta_reg(1.0, r) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isfinite(depol_beta_reg(0.99, r)));
  }
  CHECK(depol_beta_reg(0.8, 2) == doctest::Approx(2 - std::log2(2.92)).epsilon(1e-14));
  CHECK(depol_beta2_reg(0.8) == doctest::Approx(2 - std::log2(2.92)).epsilon(1e-14));
  CHECK(depol_beta_inf_reg(0.2) == 1.0);
  CHECK(depol_beta_inf_reg(0.6) == doctest::Approx(2 - std::log2(2.8)));
  // r -> infinity limit approached from finite r.
  CHECK(depol_beta_reg(0.6, 5000) == doctest::Approx(depol_beta_inf_reg(0.6)).epsilon(1e-3));
  CHECK_THROWS_AS(depol_beta_reg(1.1, 2), ArgumentError);
  CHECK_THROWS_AS(depol_beta_reg(-0.1, 2), ArgumentError);
  CHECK_THROWS_AS(depol_beta_reg(0.5, 1), ArgumentError);
}

TEST_CASE("r = 2 piecewise form equals the general form and the exhaustive value") {
  for (int k = 0; k <= 100; ++k) {
    const double l = k / 100.0;
    CHECK(std::abs(depol_beta2_reg(l) - depol_beta_reg(l, 2)) < 1e-15);
    CHECK(std::abs(beta_reg(depol(l), 2).value - depol_beta_reg(l, 2)) < 1e-9);
  }
}

TEST_CASE("general-d two-candidate value agrees with the exhaustive table for small r") {
  for (double l : {-0.1, 0.0, 0.2, 0.25, 0.5, 0.9}) {
    for (int r = 2; r <= 4; ++r) {
      CHECK(depol_beta_reg_assuming_two_candidates(3, l, r) ==
            doctest::Approx(beta_reg(depol(l, 3), r).value).epsilon(1e-10));
    }
  }
  CHECK(depol_beta_reg_assuming_two_candidates(2, 0.7, 3) == doctest::Approx(depol_beta_reg(0.7, 3)));
}

TEST_CASE("entanglement-breaking trace formula") {
  // Non-unital example with A(I/2) = diag(3/4, 1/4).
  const ComplexMatrix zero{{1.0, 0.0}, {0.0, 0.0}};
  const ComplexMatrix one{{0.0, 0.0}, {0.0, 1.0}};
  const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
  const Channel ch = build(HolevoForm{{zero, half}, {zero, one}});
  CHECK(eb_beta_reg(ch, 2) == doctest::Approx(std::log2(8.0 / 5.0)).epsilon(1e-14));
  CHECK(beta_reg(ch, 2).value == doctest::Approx(std::log2(8.0 / 5.0)).epsilon(1e-12));
  // Projective measurement: unital, log2 d.
  const Channel proj = build(FamilySpec{QCFamily{{zero, one}}});
  CHECK(eb_beta_reg(proj, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eb_beta_reg(depol(0.2), 2), PreconditionError);
}

TEST_CASE("a violated sigma condition is refused unless overridden") {
  std::vector<ComplexMatrix> tri, povm;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 3.0;
    tri.push_back(ComplexMatrix{{0.5 * (1 + std::cos(t)), 0.5 * std::sin(t)},
                                {0.5 * std::sin(t), 0.5 * (1 - std::cos(t))}});
    povm.push_back(tri.back() * Complex(2.0 / 3.0));
  }
  const Channel trine = build(HolevoForm{tri, povm});
  CHECK_NOTHROW(eb_beta_reg(trine, 2));
  CHECK_THROWS_AS(eb_beta_reg(trine, 3), PreconditionError);
  CHECK(std::isfinite(eb_beta_reg(trine, 3, true)));
}

TEST_CASE("validity range solvers reproduce the published table") {
  struct Row { int r; double c, d; };
  for (const Row row : {Row{2, 0.577, 0.732}, Row{3, 0.5, 0.835}, Row{4, 0.458, 0.878},
                        Row{10, 0.381, 0.953}, Row{100, 0.338, 0.995}}) {
    const ValidityRange v = validity_range(row.r);
    CHECK(std::abs(v.c_r - row.c) <= 0.001);
    CHECK(std::abs(v.d_r - row.d) <= 0.001);
    CHECK(0.0 < v.c_r);
    CHECK(v.c_r < v.d_r);
    CHECK(v.d_r < 1.0);
    CHECK(std::abs(2 - depol_q_full_cycle(2, v.c_r, row.r)) <= 1e-8);
  }
  CHECK(solve_c_r(2) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(solve_c_r(3) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(solve_c_r(1), ArgumentError);
  const ValidityRange v2 = validity_range(2);
  CHECK(in_validity_range(0.3, v2));
  CHECK_FALSE(in_validity_range(0.65, v2));
  CHECK(in_validity_range(0.9, v2));
}

TEST_CASE("bisection reports a missing sign change") {
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1; }, 0.0, 1.0), SolverError);
  CHECK(bisect([](double x) { return x - 0.25; }, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("the r = 2 curve has a kink at 1/sqrt(3)") {
  const double c = 1 / std::sqrt(3.0);
  const double h = 1e-6;
  const double left = (depol_beta_reg(c, 2) - depol_beta_reg(c - h, 2)) / h;
  const double right = (depol_beta_reg(c + h, 2) - depol_beta_reg(c, 2)) / h;
  CHECK(std::abs(right - left) > 1e-3);
  CHECK(std::abs(left) < 1e-6);
}

TEST_CASE("Lipschitz constants and concentration report") {
  CHECK(lipschitz_kappa(0.5) == doctest::Approx(0.85355).epsilon(1e-5));
  CHECK(levy_constant() == doctest::Approx(1.0 / (9 * std::pow(std::numbers::pi, 3) * std::log(2.0))));
  for (double l : {0.1, 0.5, 0.9}) {
    CHECK(0.0 < lipschitz_kappa(l));
    CHECK(lipschitz_kappa(l) < 1.0);
    for (int n = 1; n < 8; ++n) CHECK(lipschitz_bound(l, n + 1, 2) < lipschitz_bound(l, n, 2));
  }
  double prev = 5.0;
  for (int n = 2; n <= 6; ++n) {
    const ConcentrationReport rep = concentration_report(0.9, n, 2);
    CHECK(rep.epsilon_n > 0.0);
    CHECK(rep.epsilon_n <= 4.0);
    CHECK(rep.epsilon_n < prev);
    prev = rep.epsilon_n;
    CHECK(rep.k_sphere == 2 * std::pow(2.0, n) - 1);
    CHECK(rep.multiplicity == 1);
    CHECK(rep.alpha_n_prime.has_value());
    CHECK_FALSE(rep.constant_regime);
  }
  const ConcentrationReport one = concentration_report(1.0, 3, 2);
  CHECK(one.constant_regime);
  // lambda = 1: alpha_n = N/2 and E f = 1, so E f - alpha_n = 1/2 > 0 with N = 1.
  CHECK(one.alpha_n == doctest::Approx(0.5));
  // Small lambda, r = 2: Q_max = 2 at id; at n = 1 alpha_n exceeds E f.
  const ConcentrationReport small = concentration_report(0.1, 1, 2);
  CHECK(small.alpha_n == doctest::Approx(0.25));
  CHECK(small.mean_moment == doctest::Approx(0.505));
  CHECK(small.alpha_n_prime.has_value());
  CHECK_THROWS_AS(concentration_report(0.0, 3, 2), ArgumentError);
  CHECK_THROWS_AS(concentration_report(0.5, 0, 2), ArgumentError);
}

TEST_CASE("concentration report flags E f - alpha_n <= 0 as not applicable") {
  // With an artificially large multiplicity the difference becomes negative.
  const ConcentrationReport rep = concentration_report(0.5, 1, 2, 10);
  CHECK_FALSE(rep.alpha_n_prime.has_value());
}
