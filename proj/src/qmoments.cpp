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

#include "avgent/qmoments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace avgent {

namespace {

std::uint64_t checked_tuple_count(std::size_t base, int r, const Limits& limits, const char* what) {
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    total *= base;
    if (total > limits.max_index_tuples) {
      throw ResourceLimitError(std::string(what) + ": " + std::to_string(base) + "^" +
                               std::to_string(r) + " index tuples exceed cap " +
                               std::to_string(limits.max_index_tuples));
    }
  }
  return total;
}

// Small dense d x d products on flat row-major buffers.
void multiply_into(const Complex* a, const Complex* b, Complex* out, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < d; ++k) s += a[i * d + k] * b[k * d + j];
      out[i * d + j] = s;
    }
  }
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

void finalize_argmax(QTable& table) {
  table.q_max = 0.0;
  for (const auto& e : table.entries) table.q_max = std::max(table.q_max, std::abs(e.value));
  table.argmax_set.clear();
  table.all_nonneg_real = true;
  for (const auto& e : table.entries) {
    if (std::abs(e.value) >= table.q_max * (1.0 - kArgmaxTolerance)) table.argmax_set.push_back(e.alpha);
    if (std::abs(e.value.imag()) > 1e-10 || e.value.real() < -1e-10) table.all_nonneg_real = false;
  }
  table.multiplicity = table.argmax_set.size();
  table.unique = table.multiplicity == 1;
}

}  // namespace

Complex QTable::value(const Permutation& alpha) const {
  if (alpha.degree() != r) throw ArgumentError("QTable::value: degree mismatch");
  return entries.at(static_cast<std::size_t>(lex_rank(alpha))).value;
}

Complex q_via_matrix_elements(const Channel& ch, const Permutation& alpha, const Limits& limits) {
  const std::size_t d = ch.dim();
  const int r = alpha.degree();
  const std::uint64_t tuples = checked_tuple_count(d, r, limits, "q_via_matrix_elements");

  // images[(x*d + y)] = A(|x><y|), flattened
  std::vector<Complex> images(d * d * d * d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      const ComplexMatrix img = ch.image_of_unit(x, y);
      std::copy(img.entries().begin(), img.entries().end(), images.begin() + static_cast<std::ptrdiff_t>((x * d + y) * d * d));
    }
  }
  const auto image = [&](std::size_t x, std::size_t y) { return images.data() + (x * d + y) * d * d; };

  std::vector<std::size_t> xs(static_cast<std::size_t>(r), 0);
  std::vector<Complex> acc(d * d);
  std::vector<Complex> tmp(d * d);
  CompensatedSum re;
  CompensatedSum im;
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t rest = t;
    for (int i = r - 1; i >= 0; --i) {
      xs[static_cast<std::size_t>(i)] = rest % d;
      rest /= d;
    }
    const Complex* first = image(xs[0], xs[static_cast<std::size_t>(alpha(0))]);
    std::copy(first, first + d * d, acc.begin());
    for (int i = 1; i < r; ++i) {
      multiply_into(acc.data(), image(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(alpha(i))]),
                    tmp.data(), d);
      std::swap(acc, tmp);
    }
    Complex tr{};
    for (std::size_t i = 0; i < d; ++i) tr += acc[i * d + i];
    re.add(tr.real());
    im.add(tr.imag());
  }
  return {re.value(), im.value()};
}

Complex q_via_choi(const Channel& ch, const Permutation& alpha, const Limits& limits) {
  const std::size_t d = ch.dim();
  const int r = alpha.degree();
  const std::uint64_t basis = checked_tuple_count(d * d, r, limits, "q_via_choi");

  // Slots of (C^d)^{(x)2r} are interleaved (a_1, x_1, a_2, x_2, ...), matching
  // Choi^{(x)r} with each copy in output-first order. The cycle moves the
  // output slots and alpha moves the input slots.
  const Permutation cycle = Permutation::full_cycle(r);
  std::vector<int> slots(static_cast<std::size_t>(2 * r));
  for (int k = 0; k < r; ++k) {
    slots[static_cast<std::size_t>(2 * k)] = 2 * cycle(k);
    slots[static_cast<std::size_t>(2 * k + 1)] = 2 * alpha(k) + 1;
  }
  const Permutation joint(std::move(slots));
  const ComplexMatrix& choi = ch.choi();
  const std::uint64_t pair_base = d * d;

  // Tr[M P] = sum_i M[i, P(i)] where P|i> = |P(i)>.
  CompensatedSum re;
  CompensatedSum im;
  for (std::uint64_t i = 0; i < basis; ++i) {
    std::uint64_t j = permuted_index(joint, d, i);
    std::uint64_t ii = i;
    Complex term{1.0, 0.0};
    for (int k = r - 1; k >= 0 && term != Complex{}; --k) {
      term *= choi(ii % pair_base, j % pair_base);
      ii /= pair_base;
      j /= pair_base;
    }
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

QTable q_table(const Channel& ch, int r, const QOptions& options) {
  if (r < 1) throw ArgumentError("q_table: r must be positive");
  if (r > options.limits.max_perm_degree) {
    throw ResourceLimitError("q_table: r = " + std::to_string(r) + " exceeds cap " +
                             std::to_string(options.limits.max_perm_degree));
  }
  checked_tuple_count(ch.dim(), r, options.limits, "q_table");
  const std::uint64_t count = factorial(r);
  QTable table;
  table.r = r;
  table.entries.resize(static_cast<std::size_t>(count), QEntry{Permutation(r), {}});

  const auto fill_range = [&](std::uint64_t begin, std::uint64_t end) {
    Permutation alpha = lex_unrank(r, begin);
    std::vector<int> image = alpha.image();
    for (std::uint64_t k = begin; k < end; ++k) {
      Permutation p(image);
      const Complex q = q_via_matrix_elements(ch, p, options.limits);
      table.entries[static_cast<std::size_t>(k)] = QEntry{std::move(p), q};
      std::next_permutation(image.begin(), image.end());
    }
  };

  const auto workers = static_cast<std::uint64_t>(std::max(1, options.workers));
  if (workers == 1 || count < 2 * workers) {
    fill_range(0, count);
  } else {
    std::vector<std::jthread> threads;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(fill_range, begin, end);
    }
  }
  finalize_argmax(table);
  return table;
}

std::shared_ptr<const QTable> QTableCache::get(const Channel& ch, int r, const QOptions& options) {
  const auto key = std::make_pair(ch.fingerprint(), r);
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  auto table = std::make_shared<const QTable>(q_table(ch, r, options));
  std::lock_guard lock(mutex_);
  return tables_.emplace(key, std::move(table)).first->second;
}

std::size_t QTableCache::size() const {
  std::lock_guard lock(mutex_);
  return tables_.size();
}

double weingarten_sum(double k, int r) {
  if (k <= 0.0) throw ArgumentError("weingarten_sum: k must be positive");
  if (r < 0) throw ArgumentError("weingarten_sum: r must be nonnegative");
  return std::exp(weingarten_log_sum(std::log(k), r));
}

double weingarten_log_sum(double log_k, int r) {
  if (r < 0) throw ArgumentError("weingarten_log_sum: r must be nonnegative");
  // ln(k + j) = ln k + log1p(j / k)
  const double k = std::exp(log_k);
  double s = 0.0;
  for (int j = 0; j < r; ++j) {
    s -= std::isfinite(k) ? log_k + std::log1p(static_cast<double>(j) / k) : log_k;
  }
  return s;
}

MomentReport average_moment_exact(const Channel& ch, int n, int r, const QOptions& options) {
  return average_moment_exact(q_table(ch, r, options), ch.dim(), n);
}

MomentReport average_moment_exact(const QTable& table, std::size_t d, int n) {
  if (n < 1) throw ArgumentError("average_moment_exact: n must be positive");
  const int r = table.r;
  MomentReport report;
  report.n = n;
  report.r = r;
  const double log_k = static_cast<double>(n) * std::log(static_cast<double>(d));
  const double log_c = weingarten_log_sum(log_k, r);
  report.log2_c_k_r = log_c / std::numbers::ln2;
  report.c_k_r = std::exp(log_c);

  // Terms (Q/Q_max)^n in descending modulus.
  std::vector<const QEntry*> order;
  order.reserve(table.entries.size());
  for (const auto& e : table.entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const QEntry* a, const QEntry* b) {
    return std::abs(a->value) > std::abs(b->value);
  });
  CompensatedSum re;
  CompensatedSum im;
  for (const QEntry* e : order) {
    const double mod = std::abs(e->value);
    if (mod == 0.0) continue;
    const double scaled = std::pow(mod / table.q_max, n);
    const double phase = static_cast<double>(n) * std::arg(e->value);
    re.add(scaled * std::cos(phase));
    im.add(scaled * std::sin(phase));
  }
  const double scaled_sum = re.value();
  if (!(scaled_sum > 0.0)) {
    throw NumericalError("average_moment_exact: moment sum is not positive");
  }
  const double log_m = log_c + static_cast<double>(n) * std::log(table.q_max) + std::log(scaled_sum);
  report.log2_m_r = log_m / std::numbers::ln2;
  report.m_r = std::exp(log_m);
  if (r >= 2) {
    report.beta_r_per_system = report.log2_m_r / (static_cast<double>(n) * (1.0 - r));
    report.beta_reg_closed = (r * std::log2(static_cast<double>(d)) - std::log2(table.q_max)) / (r - 1.0);
  } else {
    report.beta_r_per_system = std::nan("");
    report.beta_reg_closed = std::nan("");
  }
  return report;
}

BetaReg beta_reg(const Channel& ch, int r, const QOptions& options) {
  if (r < 2) throw ArgumentError("beta_reg: r must be an integer >= 2");
  return beta_reg(q_table(ch, r, options), ch.dim());
}

BetaReg beta_reg(const QTable& table, std::size_t d) {
  const int r = table.r;
  if (r < 2) throw ArgumentError("beta_reg: r must be an integer >= 2");
  BetaReg out;
  out.q_max = table.q_max;
  out.value = (r * std::log2(static_cast<double>(d)) - std::log2(table.q_max)) / (r - 1.0);
  out.unique = table.unique;
  out.all_nonneg_real = table.all_nonneg_real;
  out.limit_is_plain = table.unique || table.all_nonneg_real;
  return out;
}

double q_factorization_check(const Channel& first, const Channel& second, int r,
                             const QOptions& options) {
  const Channel product = tensor_product(first, second);
  double worst = 0.0;
  for_each_permutation(
      r,
      [&](const Permutation& alpha) {
        const Complex joint = q_via_matrix_elements(product, alpha, options.limits);
        const Complex factored = q_via_matrix_elements(first, alpha, options.limits) *
                                 q_via_matrix_elements(second, alpha, options.limits);
        const double scale = std::max(std::abs(joint), std::abs(factored));
        if (scale > 0.0) worst = std::max(worst, std::abs(joint - factored) / scale);
      },
      options.limits);
  return worst;
}

}  // namespace avgent
