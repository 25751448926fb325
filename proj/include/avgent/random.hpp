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
#include <random>
#include <vector>

#include "avgent/tensor.hpp"

namespace avgent {

/// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `index` under master seed `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Reproducible random source. The engine output is fixed by the standard
/// and the uniform/normal transforms below are implemented here, so draws
/// are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  /// Complex Gaussian with independent N(0,1) real and imaginary parts.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// d x d matrix of i.i.d. complex Gaussians.
ComplexMatrix ginibre(std::size_t d, Rng& rng);

/// Random density matrix: G G^dagger / Tr, G Ginibre.
ComplexMatrix random_density_matrix(std::size_t d, Rng& rng);

/// Random Hermitian matrix (G + G^dagger)/2.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);

/// Haar-random unitary via QR of a Ginibre matrix with phase fix.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

}  // namespace avgent
