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
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "avgent/channel.hpp"
#include "avgent/symgroup.hpp"

namespace avgent {

struct QOptions {
  int workers = 1;
  Limits limits;
};

struct QEntry {
  Permutation alpha;
  Complex value;
};

/// Q(alpha) for every alpha in Sym(r), in lexicographic order, together with
/// the modulus maximum and the set of permutations attaining it.
struct QTable {
  int r = 0;
  std::vector<QEntry> entries;
  double q_max = 0.0;
  std::vector<Permutation> argmax_set;
  std::size_t multiplicity = 0;
  bool unique = false;
  bool all_nonneg_real = false;

  Complex value(const Permutation& alpha) const;
};

/// Relative tolerance for membership in the argmax set.
inline constexpr double kArgmaxTolerance = 1e-12;

/// Q(alpha) = sum over (x_1..x_r) of Tr prod_i A(|x_i><x_{alpha(i)}|),
/// factors multiplied left to right in i.
Complex q_via_matrix_elements(const Channel& ch, const Permutation& alpha,
                              const Limits& limits = {});

/// Q(alpha) = Tr[Choi^{(x)r} (R(1 2 ... r) (x) R(alpha))], with the cycle
/// acting on the output factors and alpha on the input factors of each
/// Choi copy.
Complex q_via_choi(const Channel& ch, const Permutation& alpha, const Limits& limits = {});

/// Exhaustive table over Sym(r) using q_via_matrix_elements.
QTable q_table(const Channel& ch, int r, const QOptions& options = {});

/// Memoizes q_table by (channel fingerprint, r).
class QTableCache {
 public:
  std::shared_ptr<const QTable> get(const Channel& ch, int r, const QOptions& options = {});
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const QTable>> tables_;
};

/// C_{k,r} = prod_{j=0}^{r-1} 1/(k+j), the sum of Wg(k, sigma) over Sym(r).
double weingarten_sum(double k, int r);
/// ln C_{k,r} given ln k; stays finite when k itself overflows.
double weingarten_log_sum(double log_k, int r);

struct MomentReport {
  int n = 0;
  int r = 0;
  double c_k_r = 0.0;           // C_{d^n, r}; may underflow to 0 for large n
  double log2_c_k_r = 0.0;
  double m_r = 0.0;             // E Tr(A^{(x)n}(|phi><phi|)^r)
  double log2_m_r = 0.0;
  double beta_r_per_system = 0.0;
  double beta_reg_closed = 0.0;
};

/// M_r(A^{(x)n}) = C_{d^n,r} sum_alpha Q(alpha)^n, summed in descending
/// |Q|^n order with compensation. Never builds d^n-dimensional objects.
MomentReport average_moment_exact(const Channel& ch, int n, int r, const QOptions& options = {});
MomentReport average_moment_exact(const QTable& table, std::size_t d, int n);

struct BetaReg {
  double value = 0.0;     // (r log2 d - log2 Q_max) / (r - 1)
  double q_max = 0.0;
  bool unique = false;
  bool all_nonneg_real = false;
  /// The liminf is a plain limit (unique argmax or nonnegative real Q).
  bool limit_is_plain = false;
};

BetaReg beta_reg(const Channel& ch, int r, const QOptions& options = {});
BetaReg beta_reg(const QTable& table, std::size_t d);

/// Worst relative deviation of Q_{D(x)E}(alpha) from Q_D(alpha) Q_E(alpha)
/// over Sym(r).
double q_factorization_check(const Channel& first, const Channel& second, int r,
                             const QOptions& options = {});

}  // namespace avgent
