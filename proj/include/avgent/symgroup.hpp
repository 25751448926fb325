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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "avgent/error.hpp"
#include "avgent/tensor.hpp"

namespace avgent {

/// Element of Sym(r). Stored 0-indexed: image()[i] is alpha(i). Displayed
/// 1-indexed in cycle notation, e.g. "(1 2 3)(4 5)".
class Permutation {
 public:
  /// Identity on r points.
  explicit Permutation(int r = 1);
  /// Throws ArgumentError unless `image` is a bijection on {0..r-1}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int r) { return Permutation(r); }
  /// The cycle (1 2 ... r), i.e. i -> i+1 mod r.
  static Permutation full_cycle(int r);
  /// Build from 0-indexed cycles; omitted points are fixed.
  static Permutation from_cycles(int r, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

struct CycleDecomposition {
  /// Every cycle starts at its smallest element; cycles ordered by that
  /// element. Fixed points appear as length-1 cycles.
  std::vector<std::vector<int>> cycles;
  /// Cycle lengths sorted descending.
  std::vector<int> cycle_type;
};

/// (alpha * beta)(i) = alpha(beta(i)).
Permutation compose(const Permutation& alpha, const Permutation& beta);
Permutation inverse(const Permutation& alpha);
CycleDecomposition cycle_decomposition(const Permutation& alpha);
int cycle_count(const Permutation& alpha);

/// True iff every cycle consists of consecutive integers.
bool is_non_overlapping(const Permutation& alpha);

/// Cycles laid out left to right in descending length order, e.g. [3,2]
/// gives (1 2 3)(4 5).
Permutation nonoverlapping_representative(std::vector<int> cycle_type);

std::uint64_t factorial(int r);

/// Calls `visit` on every element of Sym(r) in lexicographic order of the
/// image. Throws ResourceLimitError when r exceeds limits.max_perm_degree.
void for_each_permutation(int r, const std::function<void(const Permutation&)>& visit,
                          const Limits& limits = {});
std::vector<Permutation> enumerate(int r, const Limits& limits = {});

/// Position of alpha in lexicographic order (Lehmer code).
std::uint64_t lex_rank(const Permutation& alpha);
Permutation lex_unrank(int r, std::uint64_t rank);

struct ConjugacyClass {
  std::vector<int> cycle_type;  // descending
  std::uint64_t size = 0;
  Permutation representative;   // non-overlapping
};
/// Classes of Sym(r), one per integer partition of r, partitions in
/// reverse lexicographic order starting with [r].
std::vector<ConjugacyClass> conjugacy_classes(int r);

/// Basis index of R(alpha)|idx> on (C^d)^{(x)r}, where slot i of the
/// output receives the content of slot alpha(i). Slot 0 is the most
/// significant digit.
std::uint64_t permuted_index(const Permutation& alpha, std::size_t d, std::uint64_t idx);

/// The 0/1 matrix R(alpha) on (C^d)^{(x)r} with
///   R(alpha)(v_1 (x) ... (x) v_r) = v_{alpha(1)} (x) ... (x) v_{alpha(r)}.
ComplexMatrix permutation_operator(const Permutation& alpha, std::size_t d,
                                   const Limits& limits = {});

/// "(1 2 3)(4 5)"; identity prints as "()".
std::string to_cycle_notation(const Permutation& alpha);
/// Parses 1-indexed cycle notation on r points. Accepts "()", "id" and
/// the empty string for the identity.
Permutation parse_cycle_notation(std::string_view text, int r);

}  // namespace avgent
