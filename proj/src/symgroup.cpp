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

#include "avgent/symgroup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>

namespace avgent {

Permutation::Permutation(int r) {
  if (r < 1) throw ArgumentError("Permutation: degree must be positive");
  image_.resize(static_cast<std::size_t>(r));
  std::iota(image_.begin(), image_.end(), 0);
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  if (image_.empty()) throw ArgumentError("Permutation: degree must be positive");
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[static_cast<std::size_t>(v)]) {
      throw ArgumentError("Permutation: image is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::full_cycle(int r) {
  std::vector<int> image(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) image[static_cast<std::size_t>(i)] = (i + 1) % r;
  return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(int r, const std::vector<std::vector<int>>& cycles) {
  if (r < 1) throw ArgumentError("Permutation: degree must be positive");
  std::vector<int> image(static_cast<std::size_t>(r));
  std::iota(image.begin(), image.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(r), false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int from = cycle[k];
      if (from < 0 || from >= r) {
        throw ArgumentError("cycle element " + std::to_string(from + 1) + " out of range 1.." +
                            std::to_string(r));
      }
      if (used[static_cast<std::size_t>(from)]) {
        throw ArgumentError("cycle element " + std::to_string(from + 1) + " repeated");
      }
      used[static_cast<std::size_t>(from)] = true;
      image[static_cast<std::size_t>(from)] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation compose(const Permutation& alpha, const Permutation& beta) {
  if (alpha.degree() != beta.degree()) throw ArgumentError("compose: degree mismatch");
  std::vector<int> image(static_cast<std::size_t>(alpha.degree()));
  for (int i = 0; i < alpha.degree(); ++i) image[static_cast<std::size_t>(i)] = alpha(beta(i));
  return Permutation(std::move(image));
}

Permutation inverse(const Permutation& alpha) {
  std::vector<int> image(static_cast<std::size_t>(alpha.degree()));
  for (int i = 0; i < alpha.degree(); ++i) image[static_cast<std::size_t>(alpha(i))] = i;
  return Permutation(std::move(image));
}

CycleDecomposition cycle_decomposition(const Permutation& alpha) {
  CycleDecomposition out;
  std::vector<bool> seen(static_cast<std::size_t>(alpha.degree()), false);
  for (int start = 0; start < alpha.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = alpha(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
    }
    out.cycle_type.push_back(static_cast<int>(cycle.size()));
    out.cycles.push_back(std::move(cycle));
  }
  std::sort(out.cycle_type.begin(), out.cycle_type.end(), std::greater<>());
  return out;
}

int cycle_count(const Permutation& alpha) {
  return static_cast<int>(cycle_decomposition(alpha).cycles.size());
}

bool is_non_overlapping(const Permutation& alpha) {
  for (const auto& cycle : cycle_decomposition(alpha).cycles) {
    const auto [lo, hi] = std::minmax_element(cycle.begin(), cycle.end());
    if (*hi - *lo + 1 != static_cast<int>(cycle.size())) return false;
  }
  return true;
}

Permutation nonoverlapping_representative(std::vector<int> cycle_type) {
  int r = 0;
  for (int len : cycle_type) {
    if (len < 1) throw ArgumentError("cycle type entries must be positive");
    r += len;
  }
  if (r < 1) throw ArgumentError("cycle type is empty");
  std::sort(cycle_type.begin(), cycle_type.end(), std::greater<>());
  std::vector<std::vector<int>> cycles;
  int next = 0;
  for (int len : cycle_type) {
    std::vector<int> cycle(static_cast<std::size_t>(len));
    std::iota(cycle.begin(), cycle.end(), next);
    next += len;
    cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(r, cycles);
}

std::uint64_t factorial(int r) {
  std::uint64_t f = 1;
  for (int i = 2; i <= r; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void for_each_permutation(int r, const std::function<void(const Permutation&)>& visit,
                          const Limits& limits) {
  if (r < 1) throw ArgumentError("enumerate: r must be positive");
  if (r > limits.max_perm_degree) {
    throw ResourceLimitError("enumerate: r = " + std::to_string(r) + " exceeds cap " +
                             std::to_string(limits.max_perm_degree));
  }
  std::vector<int> image(static_cast<std::size_t>(r));
  std::iota(image.begin(), image.end(), 0);
  do {
    visit(Permutation(image));
  } while (std::next_permutation(image.begin(), image.end()));
}

std::vector<Permutation> enumerate(int r, const Limits& limits) {
  std::vector<Permutation> out;
  for_each_permutation(r, [&out](const Permutation& p) { out.push_back(p); }, limits);
  return out;
}

std::uint64_t lex_rank(const Permutation& alpha) {
  const int r = alpha.degree();
  std::uint64_t rank = 0;
  for (int i = 0; i < r; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < r; ++j) {
      if (alpha(j) < alpha(i)) ++smaller_after;
    }
    rank += static_cast<std::uint64_t>(smaller_after) * factorial(r - 1 - i);
  }
  return rank;
}

Permutation lex_unrank(int r, std::uint64_t rank) {
  if (rank >= factorial(r)) throw ArgumentError("lex_unrank: rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(r));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> image;
  image.reserve(static_cast<std::size_t>(r));
  for (int i = r - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto pick = static_cast<std::size_t>(rank / f);
    rank %= f;
    image.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Permutation(std::move(image));
}

namespace {

void partitions(int remaining, int max_part, std::vector<int>& current,
                std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<ConjugacyClass> conjugacy_classes(int r) {
  if (r < 1) throw ArgumentError("conjugacy_classes: r must be positive");
  std::vector<std::vector<int>> parts;
  std::vector<int> current;
  partitions(r, r, current, parts);
  std::vector<ConjugacyClass> out;
  for (auto& p : parts) {
    // |class| = r! / prod_k (k^{m_k} m_k!)
    std::uint64_t denom = 1;
    std::vector<int> multiplicity(static_cast<std::size_t>(r) + 1, 0);
    for (int len : p) {
      denom *= static_cast<std::uint64_t>(len);
      ++multiplicity[static_cast<std::size_t>(len)];
    }
    for (int m : multiplicity) denom *= factorial(m);
    ConjugacyClass cls{p, factorial(r) / denom, nonoverlapping_representative(p)};
    out.push_back(std::move(cls));
  }
  return out;
}

std::uint64_t permuted_index(const Permutation& alpha, std::size_t d, std::uint64_t idx) {
  const int r = alpha.degree();
  // A 64-bit index holds at most 64 binary slots.
  if (r > 64) throw ResourceLimitError("permuted_index: more than 64 tensor slots");
  // digits[i] is slot i, slot 0 most significant
  std::uint64_t digits[64];
  for (int i = r - 1; i >= 0; --i) {
    digits[i] = idx % d;
    idx /= d;
  }
  std::uint64_t out = 0;
  for (int i = 0; i < r; ++i) out = out * d + digits[alpha(i)];
  return out;
}

ComplexMatrix permutation_operator(const Permutation& alpha, std::size_t d, const Limits& limits) {
  std::uint64_t dim = 1;
  for (int i = 0; i < alpha.degree(); ++i) {
    dim *= d;
    if (dim > limits.max_matrix_dim) {
      throw ResourceLimitError("permutation_operator: dimension exceeds max dimension " +
                               std::to_string(limits.max_matrix_dim));
    }
  }
  ComplexMatrix out(dim, dim);
  for (std::uint64_t in = 0; in < dim; ++in) out(permuted_index(alpha, d, in), in) = 1.0;
  return out;
}

std::string to_cycle_notation(const Permutation& alpha) {
  std::string out;
  for (const auto& cycle : cycle_decomposition(alpha).cycles) {
    if (cycle.size() == 1) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k > 0) out += ' ';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycle_notation(std::string_view text, int r) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  const auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  if (text.substr(pos) == "id") return Permutation::identity(r);
  while (true) {
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != '(') {
      throw ArgumentError("cycle notation: expected '(' at position " + std::to_string(pos));
    }
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (pos == text.size()) throw ArgumentError("cycle notation: unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw ArgumentError("cycle notation: unexpected character '" + std::string(1, text[pos]) +
                            "'");
      }
      int value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
      }
      cycle.push_back(value - 1);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(r, cycles);
}

}  // namespace avgent
