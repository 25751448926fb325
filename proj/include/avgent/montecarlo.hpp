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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avgent/channel.hpp"
#include "avgent/random.hpp"
#include "avgent/tensor.hpp"

namespace avgent::mc {

/// Eigenvalues above -kClampThreshold are clamped to zero before powering.
inline constexpr double kClampThreshold = 1e-10;
/// The clamped spectrum is renormalized only when its sum is further than
/// this from one.
inline constexpr double kRenormalizeThreshold = 1e-9;

/// Default worker count: AVGENT_WORKERS if set to a positive integer, else 1.
int default_workers();

struct McConfig {
  int n = 1;
  double r = 2.0;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Optional fixed unitary applied to every sampled input state.
  std::optional<ComplexMatrix> input_rotation;
  Limits limits;
};

enum class Quantity { avg_entropy_per_system, beta_per_system, raw_moment };
std::string to_string(Quantity q);

struct McEstimate {
  Quantity quantity = Quantity::raw_moment;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Normalized vector of i.i.d. standard complex Gaussians; distributed like
/// U|0> for Haar-random U.
std::vector<Complex> sample_haar_state(std::size_t dim, Rng& rng);

/// Spectrum of A^{(x)n}(|phi><phi|), descending, with small negative
/// eigenvalues clamped as described above.
std::vector<double> output_spectrum(const Channel& ch, int n, std::span<const Complex> phi,
                                    const Limits& limits = {});

/// sum_i p_i^r over a clamped spectrum (zeros skipped).
double spectrum_moment(std::span<const double> spectrum, double r);
/// Renyi entropy in bits; r = 1 gives the von Neumann entropy with 0 log 0 = 0.
double spectrum_entropy(std::span<const double> spectrum, double r);

/// Tr(A^{(x)n}(|phi><phi|)^r) through the eigenvalues; any real r >= 1.
double output_moment(const Channel& ch, int n, std::span<const Complex> phi, double r,
                     const Limits& limits = {});
/// Same for integer r through repeated multiplication.
double output_moment_matpow(const Channel& ch, int n, std::span<const Complex> phi, int r,
                            const Limits& limits = {});

/// Per-r estimates computed from one shared set of samples.
struct MultiEstimate {
  std::vector<double> r_values;
  std::vector<McEstimate> moment;       // raw_moment
  std::vector<McEstimate> beta;         // beta_per_system; NaN mean at r = 1
  std::vector<McEstimate> avg_entropy;  // avg_entropy_per_system
};

/// One pass over cfg.samples Haar inputs, evaluating every r in `r_values`.
/// Sample i draws from stream_seed(cfg.seed, i) and is processed by worker
/// i mod workers; per-sample values are reduced in index order, so results
/// are bit-identical for any worker count.
MultiEstimate estimate_all(const Channel& ch, const McConfig& cfg,
                           std::span<const double> r_values);

McEstimate estimate_moment(const Channel& ch, const McConfig& cfg);
/// log2(mean moment) / (n (1 - r)), delta-method standard error; needs r > 1.
McEstimate estimate_beta(const Channel& ch, const McConfig& cfg);
McEstimate estimate_avg_entropy(const Channel& ch, const McConfig& cfg);

/// E |<0|phi>|^{2k} over Haar states on C^dim.
McEstimate estimate_overlap_moment(std::size_t dim, int k, const McConfig& cfg);

struct LipschitzResult {
  double max_ratio = 0.0;             // max |f(phi) - f(psi)| / ||phi - psi||
  double bound = 0.0;                 // sqrt(2) r kappa^n
  double max_projector_ratio = 0.0;   // max ||phi phi* - psi psi*||_2 / ||phi - psi||
  std::size_t pairs = 0;
};

/// f(phi) = Tr(Delta^{(x)n}(|phi><phi|)^r) on sampled pairs. Even-numbered
/// pairs are independent Haar states; odd-numbered pairs are a Haar state
/// and a renormalized perturbation of it of size ~1e-4.
LipschitzResult lipschitz_empirical(double lambda, int n, int r, std::size_t pairs, Rng& rng);

struct SequencePoint {
  int n = 0;
  double c_n = 0.0;
};

struct RandomSequenceResult {
  double lambda = 0.0;
  int r = 0;
  std::vector<SequencePoint> points;
  double target = 0.0;   // (r - log2 Q_max) / (r - 1)
  /// "limit_proved" inside [0, c_r] u [d_r, 1]; "no_claimed_limit" otherwise.
  std::string regime;
};

/// One independent Haar state per n = 1..n_max; c_n = S_r(Delta^{(x)n}(phi phi*)) / n.
RandomSequenceResult random_sequence_run(double lambda, int r, int n_max, std::uint64_t seed,
                                         const Limits& limits = {});

struct ConvexityResult {
  std::vector<double> r_grid;
  std::vector<double> f;         // (1/n) log2 E Tr rho^r
  std::vector<double> f_stderr;
  double min_second_difference = 0.0;
  double tolerance = 0.0;        // 4 x combined stderr at the minimizing point, plus 1e-9
  bool convex = false;           // min_second_difference >= -tolerance
};

/// Divided second differences of f_n(r) on an ascending grid (>= 3 points),
/// all r sharing the same samples.
ConvexityResult convexity_probe(const Channel& ch, const McConfig& cfg,
                                std::span<const double> r_grid);

}  // namespace avgent::mc
