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

#include <cstdint>
#include <string>
#include <vector>

namespace avgent::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // runtime budget; exceeding it fails the check
};

struct VerifyOptions {
  int workers = 1;
  std::uint64_t seed = 20261015;
  std::size_t mc_samples = 100'000;
  std::size_t lipschitz_pairs = 10'000;
};

/// Published validity-range table for r in {2, 3, 4, 10, 100}, to +-0.001.
CheckResult table_reproduction(const VerifyOptions& opts);
/// Exhaustive beta_reg of the qubit depolarizing channel against its
/// closed form on a 101-point grid, r in {2, ..., 5}.
CheckResult depolarizing_closed_form(const VerifyOptions& opts);
/// Matrix-element and Choi definitions of Q agree on random qubit channels.
CheckResult dual_definition(const VerifyOptions& opts);
/// Q of a tensor product factorizes.
CheckResult factorization(const VerifyOptions& opts);
/// Q_max of the depolarizing channel is attained at id or the full cycle.
CheckResult depolarizing_maximizer(const VerifyOptions& opts);
/// Measure-and-prepare channels: unique argmax at id and the trace formula.
CheckResult entanglement_breaking(const VerifyOptions& opts);
/// Monte Carlo moments against the exact Weingarten sum, and the Jensen
/// ordering of the same runs. Returns two results.
std::vector<CheckResult> monte_carlo_oracle(const VerifyOptions& opts);
/// Empirical Lipschitz ratios against sqrt(2) r kappa^n.
CheckResult lipschitz(const VerifyOptions& opts);
/// One-sided difference quotients of beta_2^reg at 1/sqrt(3).
CheckResult kink(const VerifyOptions& opts);

/// Every check above, in order.
std::vector<CheckResult> run_all(const VerifyOptions& opts);

/// "PASS name (1.23 s): detail"
std::string format(const CheckResult& result);

}  // namespace avgent::verify
