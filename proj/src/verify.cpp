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

#include "avgent/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "avgent/channel.hpp"
#include "avgent/closedforms.hpp"
#include "avgent/montecarlo.hpp"
#include "avgent/qmoments.hpp"
#include "avgent/random.hpp"

namespace avgent::verify {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(detail) -> passed, timing it against the budget.
CheckResult timed(const std::string& name, double budget,
                  const std::function<bool(std::ostringstream&)>& body) {
  CheckResult res;
  res.name = name;
  res.budget_seconds = budget;
  std::ostringstream detail;
  detail.precision(6);
  const auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    ok = false;
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (res.seconds >= budget) {
    detail << "; runtime " << res.seconds << " s exceeds budget " << budget << " s";
    ok = false;
  }
  res.passed = ok;
  res.detail = detail.str();
  return res;
}

Channel depolarizing(double lambda) { return build(FamilySpec{Depolarizing{2, lambda}}); }

// Measure-and-prepare form of the qubit depolarizing channel, valid for
// |lambda| <= 1/3: sigma_{+-j} = (I +- 3 lambda s_j)/2, X_{+-j} = (I +- s_j)/6.
HolevoForm depolarizing_holevo(double lambda) {
  const Complex i(0.0, 1.0);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix paulis[3] = {ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
                                   ComplexMatrix{{0.0, -i}, {i, 0.0}},
                                   ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}};
  HolevoForm h;
  for (const auto& s : paulis) {
    for (double sign : {1.0, -1.0}) {
      h.sigmas.push_back((id + s * Complex(3.0 * lambda * sign, 0.0)) * Complex(0.5, 0.0));
      h.povm.push_back((id + s * Complex(sign, 0.0)) * Complex(1.0 / 6.0, 0.0));
    }
  }
  return h;
}

struct RangeRow {
  int r;
  double c;
  double d;
};

}  // namespace

CheckResult table_reproduction(const VerifyOptions&) {
  return timed("table_reproduction", 1.0, [](std::ostringstream& out) {
    const RangeRow rows[] = {
        {2, 0.577, 0.732}, {3, 0.5, 0.835}, {4, 0.458, 0.878}, {10, 0.381, 0.953}, {100, 0.338, 0.995}};
    bool ok = true;
    for (const auto& row : rows) {
      const closed::ValidityRange v = closed::validity_range(row.r);
      const bool row_ok = std::abs(v.c_r - row.c) <= 0.001 && std::abs(v.d_r - row.d) <= 0.001;
      ok = ok && row_ok;
      out << "r=" << row.r << " c=" << v.c_r << " d=" << v.d_r << (row_ok ? "" : " MISMATCH")
          << "; ";
    }
    return ok;
  });
}

CheckResult depolarizing_closed_form(const VerifyOptions& opts) {
  return timed("depolarizing_closed_form", 10.0, [&](std::ostringstream& out) {
    QOptions qo;
    qo.workers = opts.workers;
    double worst = 0.0;
    double worst_lambda = 0.0;
    int worst_r = 0;
    for (int r = 2; r <= 5; ++r) {
      for (int k = 0; k <= 100; ++k) {
        const double lambda = k / 100.0;
        const QTable table = q_table(depolarizing(lambda), r, qo);
        const double diff =
            std::abs(beta_reg(table, 2).value - closed::depol_beta_reg(lambda, r));
        if (diff > worst) {
          worst = diff;
          worst_lambda = lambda;
          worst_r = r;
        }
      }
    }
    out << "max |exhaustive - closed| = " << worst << " at lambda=" << worst_lambda
        << " r=" << worst_r << " (tol 1e-9)";
    return worst <= 1e-9;
  });
}

CheckResult dual_definition(const VerifyOptions& opts) {
  return timed("dual_definition", 60.0, [&](std::ostringstream& out) {
    Rng rng(stream_seed(opts.seed, 1));
    double worst = 0.0;
    std::size_t count = 0;
    for (int c = 0; c < 20; ++c) {
      const Channel ch = random_channel(2, 1 + c % 4, rng);
      for (int r = 2; r <= 4; ++r) {
        for_each_permutation(r, [&](const Permutation& alpha) {
          const Complex a = q_via_matrix_elements(ch, alpha);
          const Complex b = q_via_choi(ch, alpha);
          worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
          ++count;
        });
      }
    }
    out << count << " values, worst scaled difference " << worst << " (tol 1e-9)";
    return worst <= 1e-9;
  });
}

CheckResult factorization(const VerifyOptions& opts) {
  return timed("factorization", 60.0, [&](std::ostringstream& out) {
    Rng rng(stream_seed(opts.seed, 2));
    QOptions qo;
    qo.workers = opts.workers;
    double worst = 0.0;
    for (int p = 0; p < 10; ++p) {
      const Channel first = random_channel(2, 1 + p % 3, rng);
      const Channel second = random_channel(2 + p % 2, 1 + (p + 1) % 3, rng);
      for (int r = 2; r <= 3; ++r) {
        worst = std::max(worst, q_factorization_check(first, second, r, qo));
      }
    }
    out << "10 pairs, r in {2,3}, worst relative deviation " << worst << " (tol 1e-9)";
    return worst <= 1e-9;
  });
}

CheckResult depolarizing_maximizer(const VerifyOptions& opts) {
  return timed("depolarizing_maximizer", 60.0, [&](std::ostringstream& out) {
    QOptions qo;
    qo.workers = opts.workers;
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double lambda = k / 10.0;
      const Channel ch = depolarizing(lambda);
      for (int r = 2; r <= 6; ++r) {
        const double expected = std::max(2.0, closed::depol_q_full_cycle(2, lambda, r));
        worst = std::max(worst, std::abs(q_table(ch, r, qo).q_max - expected));
      }
    }
    out << "max |Q_max - max{2, Q(full cycle)}| = " << worst << " (tol 1e-12)";
    return worst <= 1e-12;
  });
}

CheckResult entanglement_breaking(const VerifyOptions& opts) {
  return timed("entanglement_breaking", 60.0, [&](std::ostringstream& out) {
    Rng rng(stream_seed(opts.seed, 3));
    QOptions qo;
    qo.workers = opts.workers;
    bool ok = true;
    double worst = 0.0;
    for (std::size_t d = 2; d <= 3; ++d) {
      const Channel ch = build(FamilySpec{QCFamily{random_povm(d, d, rng)}});
      for (int r = 2; r <= 3; ++r) {
        const QTable table = q_table(ch, r, qo);
        const bool unique_id = table.unique && table.argmax_set.front().is_identity();
        if (!unique_id) out << "qc d=" << d << " r=" << r << " argmax not uniquely id; ";
        ok = ok && unique_id;
        worst = std::max(worst, std::abs(beta_reg(table, d).value - closed::eb_beta_reg(ch, r)));
      }
    }
    // Unital examples: value log2 d.
    std::vector<Channel> unital;
    unital.push_back(build(depolarizing_holevo(0.25)));
    {
      const Complex i(0.0, 1.0);
      const ComplexMatrix tilt{{0.5 + 0.3, 0.2 - 0.1 * i}, {0.2 + 0.1 * i, 0.5 - 0.3}};
      const ComplexMatrix rest = ComplexMatrix::identity(2) - tilt;
      unital.push_back(build(FamilySpec{QCFamily{{tilt, rest}}}));
    }
    {
      const ComplexMatrix v = random_unitary(3, rng);
      std::vector<ComplexMatrix> povm;
      for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Complex> col(3);
        for (std::size_t a = 0; a < 3; ++a) col[a] = v(a, k);
        povm.push_back(ComplexMatrix::outer(col) * Complex(0.7, 0.0) +
                       ComplexMatrix::identity(3) * Complex(0.1, 0.0));
      }
      unital.push_back(build(FamilySpec{QCFamily{povm}}));
    }
    for (const auto& ch : unital) {
      const double log_d = std::log2(static_cast<double>(ch.dim()));
      for (int r = 2; r <= 3; ++r) {
        worst = std::max(worst, std::abs(beta_reg(ch, r, qo).value - log_d));
        worst = std::max(worst, std::abs(closed::eb_beta_reg(ch, r) - log_d));
      }
    }
    out << "worst |exhaustive - trace formula| = " << worst << " (tol 1e-9)";
    return ok && worst <= 1e-9;
  });
}

std::vector<CheckResult> monte_carlo_oracle(const VerifyOptions& opts) {
  // Constant outputs (lambda in {0, 1}) have zero sample variance; allow
  // rounding-level slack on top of the 4-sigma band.
  constexpr double kFloor = 1e-10;
  std::vector<double> jensen_margins;
  bool jensen_ok = true;
  std::ostringstream jensen_detail;
  jensen_detail.precision(6);
  double jensen_seconds = 0.0;

  CheckResult oracle = timed("weingarten_monte_carlo", 120.0, [&](std::ostringstream& out) {
    bool ok = true;
    double worst_z = 0.0;
    double worst_jensen = -1e300;
    const double r_values[] = {2.0, 3.0};
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const Channel ch = depolarizing(lambda);
      for (int n = 1; n <= 3; ++n) {
        mc::McConfig cfg;
        cfg.n = n;
        cfg.samples = opts.mc_samples;
        cfg.seed = stream_seed(opts.seed, 100 + static_cast<std::uint64_t>(lambda * 100) * 10 + n);
        cfg.workers = opts.workers;
        const auto start = Clock::now();
        const mc::MultiEstimate est = mc::estimate_all(ch, cfg, r_values);
        for (std::size_t j = 0; j < 2; ++j) {
          const int r = static_cast<int>(r_values[j]);
          const double exact = average_moment_exact(ch, n, r).m_r;
          const auto& m = est.moment[j];
          const double dev = std::abs(m.mean - exact);
          // Constant outputs have rounding-level stderr; exclude them from the z summary.
          if (m.std_error > 1e-12) worst_z = std::max(worst_z, dev / m.std_error);
          if (dev > 4.0 * m.std_error + kFloor) {
            ok = false;
            out << "lambda=" << lambda << " n=" << n << " r=" << r << " mc=" << m.mean
                << " exact=" << exact << " stderr=" << m.std_error << "; ";
          }
          const auto& h = est.avg_entropy[j];
          const auto& b = est.beta[j];
          const double sigma = std::hypot(h.std_error, b.std_error);
          const double margin = h.mean - (b.mean - 4.0 * sigma - kFloor);
          worst_jensen = std::max(worst_jensen, -margin);
          if (margin < 0.0) {
            jensen_ok = false;
            jensen_detail << "lambda=" << lambda << " n=" << n << " r=" << r
                          << " S=" << h.mean << " beta=" << b.mean << "; ";
          }
        }
        jensen_seconds += std::chrono::duration<double>(Clock::now() - start).count();
      }
    }
    mc::McConfig cfg;
    cfg.samples = opts.mc_samples;
    cfg.seed = stream_seed(opts.seed, 99);
    cfg.workers = opts.workers;
    const mc::McEstimate overlap = mc::estimate_overlap_moment(2, 2, cfg);
    const bool overlap_ok = std::abs(overlap.mean - 1.0 / 3.0) <= 4.0 * overlap.std_error;
    ok = ok && overlap_ok;
    out << "30 configurations, worst |mc - exact|/stderr = " << worst_z
        << "; E|<0|phi>|^4 = " << overlap.mean << " +- " << overlap.std_error << " (1/3)";
    jensen_detail << "30 configurations, worst (beta - 4 sigma) - S = " << worst_jensen;
    return ok;
  });

  CheckResult jensen;
  jensen.name = "jensen_ordering";
  jensen.passed = jensen_ok && oracle.detail.find("exception") == std::string::npos;
  jensen.detail = jensen_detail.str();
  jensen.seconds = jensen_seconds;
  jensen.budget_seconds = oracle.budget_seconds;
  return {oracle, jensen};
}

CheckResult lipschitz(const VerifyOptions& opts) {
  return timed("lipschitz_bound", 60.0, [&](std::ostringstream& out) {
    bool ok = true;
    double worst_fraction = 0.0;
    double worst_projector = 0.0;
    for (double lambda : {0.5, 0.9}) {
      for (int n = 2; n <= 4; ++n) {
        for (int r = 2; r <= 3; ++r) {
          Rng rng(stream_seed(opts.seed, 1000 + static_cast<std::uint64_t>(lambda * 10) * 100 +
                                             n * 10 + r));
          const mc::LipschitzResult res = mc::lipschitz_empirical(lambda, n, r, opts.lipschitz_pairs, rng);
          worst_fraction = std::max(worst_fraction, res.max_ratio / res.bound);
          worst_projector = std::max(worst_projector, res.max_projector_ratio);
          if (res.max_ratio > res.bound) {
            ok = false;
            out << "lambda=" << lambda << " n=" << n << " r=" << r << " ratio=" << res.max_ratio
                << " bound=" << res.bound << "; ";
          }
        }
      }
    }
    const bool projector_ok = worst_projector <= std::numbers::sqrt2 * (1.0 + 1e-12);
    out << "worst ratio/bound = " << worst_fraction
        << "; worst projector ratio = " << worst_projector << " (<= sqrt 2)";
    return ok && projector_ok;
  });
}

CheckResult kink(const VerifyOptions&) {
  return timed("kink", 1.0, [](std::ostringstream& out) {
    const double c = 1.0 / std::numbers::sqrt3;
    const double h = 1e-6;
    const double left = (closed::depol_beta_reg(c, 2) - closed::depol_beta_reg(c - h, 2)) / h;
    const double right = (closed::depol_beta_reg(c + h, 2) - closed::depol_beta_reg(c, 2)) / h;
    out << "left " << left << ", right " << right << ", |difference| " << std::abs(right - left)
        << " (> 1e-3)";
    return std::abs(right - left) > 1e-3;
  });
}

std::vector<CheckResult> run_all(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  out.push_back(table_reproduction(opts));
  out.push_back(depolarizing_closed_form(opts));
  out.push_back(dual_definition(opts));
  out.push_back(factorization(opts));
  out.push_back(depolarizing_maximizer(opts));
  out.push_back(entanglement_breaking(opts));
  for (auto& r : monte_carlo_oracle(opts)) out.push_back(std::move(r));
  out.push_back(lipschitz(opts));
  out.push_back(kink(opts));
  return out;
}

std::string format(const CheckResult& result) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s): ", result.seconds);
  return std::string(result.passed ? "PASS " : "FAIL ") + result.name + buf + result.detail;
}

}  // namespace avgent::verify
