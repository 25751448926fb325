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

#include "avgent/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "avgent/closedforms.hpp"
#include "avgent/error.hpp"

namespace avgent::mc {

namespace {

// Runs fn(i) for i in [0, count); worker w takes i = w, w + workers, ...
template <typename F>
void strided_for(std::size_t count, int workers, F fn) {
  const std::size_t nw = static_cast<std::size_t>(std::max(1, workers));
  if (nw == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> failures(nw);
  {
    std::vector<std::jthread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += nw) fn(i);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

struct Stats {
  double mean = 0.0;
  double std_error = 0.0;
};

// Index-order compensated mean and two-pass sample variance.
Stats summarize(const std::vector<double>& values, std::size_t stride, std::size_t offset) {
  const std::size_t count = values.size() / stride;
  Stats s;
  if (count == 0) return s;
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = values[i * stride + offset];
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  s.mean = (sum + comp) / static_cast<double>(count);
  if (count < 2) return s;
  double sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dev = values[i * stride + offset] - s.mean;
    sq += dev * dev;
  }
  const double var = sq / static_cast<double>(count - 1);
  s.std_error = std::sqrt(var / static_cast<double>(count));
  return s;
}

void validate_config(const Channel& ch, const McConfig& cfg) {
  if (cfg.n < 1) throw ArgumentError("McConfig: n must be >= 1");
  if (!(cfg.r >= 1.0)) throw ArgumentError("McConfig: r must be >= 1");
  if (cfg.samples < 1) throw ArgumentError("McConfig: samples must be positive");
  if (cfg.workers < 1) throw ArgumentError("McConfig: workers must be positive");
  double dim = 1.0;
  for (int i = 0; i < cfg.n; ++i) dim *= static_cast<double>(ch.dim());
  if (dim > static_cast<double>(cfg.limits.max_matrix_dim)) {
    throw ResourceLimitError("McConfig: d^n = " + std::to_string(dim) +
                             " exceeds max_matrix_dim " +
                             std::to_string(cfg.limits.max_matrix_dim));
  }
  if (cfg.input_rotation) {
    const auto& u = *cfg.input_rotation;
    if (u.rows() != static_cast<std::size_t>(dim) || !u.is_square()) {
      throw ArgumentError("McConfig: input_rotation must be d^n x d^n");
    }
  }
}

std::size_t power_dim(std::size_t d, int n) {
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;
  return dim;
}

std::vector<Complex> rotate(const ComplexMatrix& u, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += u(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double vector_distance(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

void normalize(std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  const double inv = 1.0 / std::sqrt(s);
  for (auto& z : v) z *= inv;
}

}  // namespace

int default_workers() {
  if (const char* env = std::getenv("AVGENT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::avg_entropy_per_system: return "avg_entropy_per_system";
    case Quantity::beta_per_system: return "beta_per_system";
    case Quantity::raw_moment: return "raw_moment";
  }
  return "unknown";
}

std::vector<Complex> sample_haar_state(std::size_t dim, Rng& rng) {
  if (dim < 1) throw ArgumentError("sample_haar_state: dim must be >= 1");
  std::vector<Complex> v(dim);
  for (auto& z : v) z = rng.complex_normal();
  normalize(v);
  return v;
}

std::vector<double> output_spectrum(const Channel& ch, int n, std::span<const Complex> phi,
                                    const Limits& limits) {
  const ComplexMatrix rho = ComplexMatrix::outer(phi);
  std::vector<double> spec = hermitian_eigenvalues(apply_tensor_power(ch, n, rho, limits));
  double total = 0.0;
  for (double& e : spec) {
    if (e < 0.0) {
      if (e < -kClampThreshold) {
        throw NumericalError("output_spectrum: eigenvalue " + std::to_string(e) +
                             " below the clamp threshold");
      }
      e = 0.0;
    }
    total += e;
  }
  if (std::abs(total - 1.0) > kRenormalizeThreshold) {
    for (double& e : spec) e /= total;
  }
  return spec;
}

double spectrum_moment(std::span<const double> spectrum, double r) {
  double s = 0.0;
  for (double e : spectrum) {
    if (e > 0.0) s += std::pow(e, r);
  }
  return s;
}

double spectrum_entropy(std::span<const double> spectrum, double r) {
  if (r == 1.0) {
    double h = 0.0;
    for (double e : spectrum) {
      if (e > 0.0) h -= e * std::log2(e);
    }
    return h;
  }
  return std::log2(spectrum_moment(spectrum, r)) / (1.0 - r);
}

double output_moment(const Channel& ch, int n, std::span<const Complex> phi, double r,
                     const Limits& limits) {
  if (!(r >= 1.0)) throw ArgumentError("output_moment: r must be >= 1");
  return spectrum_moment(output_spectrum(ch, n, phi, limits), r);
}

double output_moment_matpow(const Channel& ch, int n, std::span<const Complex> phi, int r,
                            const Limits& limits) {
  if (r < 1) throw ArgumentError("output_moment_matpow: r must be >= 1");
  const ComplexMatrix out = apply_tensor_power(ch, n, ComplexMatrix::outer(phi), limits);
  return trace(matpow(out, r)).real();
}

MultiEstimate estimate_all(const Channel& ch, const McConfig& cfg,
                           std::span<const double> r_values) {
  validate_config(ch, cfg);
  if (r_values.empty()) throw ArgumentError("estimate_all: empty r list");
  for (double r : r_values) {
    if (!(r >= 1.0)) throw ArgumentError("estimate_all: every r must be >= 1");
  }
  const std::size_t dim = power_dim(ch.dim(), cfg.n);
  const std::size_t nr = r_values.size();
  // Per sample: nr moments followed by nr entropies.
  const std::size_t stride = 2 * nr;
  std::vector<double> values(cfg.samples * stride);

  strided_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    Rng rng(stream_seed(cfg.seed, i));
    std::vector<Complex> phi = sample_haar_state(dim, rng);
    if (cfg.input_rotation) phi = rotate(*cfg.input_rotation, phi);
    const std::vector<double> spec = output_spectrum(ch, cfg.n, phi, cfg.limits);
    for (std::size_t j = 0; j < nr; ++j) {
      values[i * stride + j] = spectrum_moment(spec, r_values[j]);
      values[i * stride + nr + j] = spectrum_entropy(spec, r_values[j]);
    }
  });

  MultiEstimate out;
  out.r_values.assign(r_values.begin(), r_values.end());
  const double n = static_cast<double>(cfg.n);
  for (std::size_t j = 0; j < nr; ++j) {
    const double r = r_values[j];
    const Stats m = summarize(values, stride, j);
    const Stats h = summarize(values, stride, nr + j);
    if (!(m.mean > 0.0)) throw NumericalError("estimate_all: nonpositive mean moment");
    out.moment.push_back({Quantity::raw_moment, m.mean, m.std_error, cfg.samples});
    McEstimate beta{Quantity::beta_per_system, std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), cfg.samples};
    if (r > 1.0) {
      beta.mean = std::log2(m.mean) / (n * (1.0 - r));
      beta.std_error = m.std_error / (m.mean * n * (r - 1.0) * std::numbers::ln2);
    }
    out.beta.push_back(beta);
    out.avg_entropy.push_back({Quantity::avg_entropy_per_system, h.mean / n, h.std_error / n,
                               cfg.samples});
  }
  return out;
}

McEstimate estimate_moment(const Channel& ch, const McConfig& cfg) {
  const double r[] = {cfg.r};
  return estimate_all(ch, cfg, r).moment.front();
}

McEstimate estimate_beta(const Channel& ch, const McConfig& cfg) {
  if (!(cfg.r > 1.0)) throw ArgumentError("estimate_beta: r must be > 1");
  const double r[] = {cfg.r};
  return estimate_all(ch, cfg, r).beta.front();
}

McEstimate estimate_avg_entropy(const Channel& ch, const McConfig& cfg) {
  const double r[] = {cfg.r};
  return estimate_all(ch, cfg, r).avg_entropy.front();
}

McEstimate estimate_overlap_moment(std::size_t dim, int k, const McConfig& cfg) {
  if (dim < 1 || k < 1) throw ArgumentError("estimate_overlap_moment: dim and k must be >= 1");
  if (cfg.samples < 1) throw ArgumentError("McConfig: samples must be positive");
  std::vector<double> values(cfg.samples);
  strided_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    Rng rng(stream_seed(cfg.seed, i));
    const std::vector<Complex> phi = sample_haar_state(dim, rng);
    values[i] = std::pow(std::norm(phi[0]), k);
  });
  const Stats s = summarize(values, 1, 0);
  return {Quantity::raw_moment, s.mean, s.std_error, cfg.samples};
}

LipschitzResult lipschitz_empirical(double lambda, int n, int r, std::size_t pairs, Rng& rng) {
  if (r < 2) throw ArgumentError("lipschitz_empirical: r must be an integer >= 2");
  if (n < 1) throw ArgumentError("lipschitz_empirical: n must be >= 1");
  const Channel ch = build(FamilySpec{Depolarizing{2, lambda}});
  const std::size_t dim = power_dim(2, n);
  LipschitzResult res;
  res.bound = closed::lipschitz_bound(lambda, n, r);
  res.pairs = pairs;
  constexpr double kNearScale = 1e-4;
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::vector<Complex> phi = sample_haar_state(dim, rng);
    std::vector<Complex> psi;
    if (p % 2 == 0) {
      psi = sample_haar_state(dim, rng);
    } else {
      const std::vector<Complex> dir = sample_haar_state(dim, rng);
      psi = phi;
      for (std::size_t i = 0; i < dim; ++i) psi[i] += kNearScale * dir[i];
      normalize(psi);
    }
    const double dist = vector_distance(phi, psi);
    if (dist == 0.0) continue;
    const double f_phi = output_moment(ch, n, phi, r);
    const double f_psi = output_moment(ch, n, psi, r);
    res.max_ratio = std::max(res.max_ratio, std::abs(f_phi - f_psi) / dist);
    const double proj = frobenius_norm(ComplexMatrix::outer(phi) - ComplexMatrix::outer(psi));
    res.max_projector_ratio = std::max(res.max_projector_ratio, proj / dist);
  }
  return res;
}

RandomSequenceResult random_sequence_run(double lambda, int r, int n_max, std::uint64_t seed,
                                         const Limits& limits) {
  if (r < 2) throw ArgumentError("random_sequence_run: r must be an integer >= 2");
  if (n_max < 1) throw ArgumentError("random_sequence_run: n_max must be >= 1");
  if (power_dim(2, n_max) > limits.max_matrix_dim) {
    throw ResourceLimitError("random_sequence_run: 2^n_max exceeds max_matrix_dim");
  }
  const Channel ch = build(FamilySpec{Depolarizing{2, lambda}});
  RandomSequenceResult res;
  res.lambda = lambda;
  res.r = r;
  const double q_max = std::max(2.0, closed::depol_q_full_cycle(2, lambda, r));
  res.target = (r - std::log2(q_max)) / (r - 1);
  res.regime = closed::in_validity_range(lambda, closed::validity_range(r)) ? "limit_proved"
                                                                           : "no_claimed_limit";
  for (int n = 1; n <= n_max; ++n) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(n)));
    const std::vector<Complex> phi = sample_haar_state(power_dim(2, n), rng);
    const std::vector<double> spec = output_spectrum(ch, n, phi, limits);
    res.points.push_back({n, spectrum_entropy(spec, r) / n});
  }
  return res;
}

ConvexityResult convexity_probe(const Channel& ch, const McConfig& cfg,
                                std::span<const double> r_grid) {
  if (r_grid.size() < 3) throw ArgumentError("convexity_probe: need at least 3 grid points");
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > r_grid[i - 1])) {
      throw ArgumentError("convexity_probe: r grid must be strictly ascending");
    }
  }
  const MultiEstimate est = estimate_all(ch, cfg, r_grid);
  ConvexityResult res;
  res.r_grid.assign(r_grid.begin(), r_grid.end());
  const double n = static_cast<double>(cfg.n);
  for (const auto& m : est.moment) {
    res.f.push_back(std::log2(m.mean) / n);
    res.f_stderr.push_back(m.std_error / (m.mean * n * std::numbers::ln2));
  }
  // Constant spectra give zero stderr; leave room for rounding.
  constexpr double kConvexityFloor = 1e-9;
  res.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < r_grid.size(); ++i) {
    const double h0 = r_grid[i] - r_grid[i - 1];
    const double h1 = r_grid[i + 1] - r_grid[i];
    // Weights of f[i-1], f[i], f[i+1] in the divided second difference.
    const double w0 = 2.0 / (h0 * (h0 + h1));
    const double w1 = -2.0 / (h0 * h1);
    const double w2 = 2.0 / (h1 * (h0 + h1));
    const double second = w0 * res.f[i - 1] + w1 * res.f[i] + w2 * res.f[i + 1];
    const double sigma = std::sqrt(std::pow(w0 * res.f_stderr[i - 1], 2) +
                                   std::pow(w1 * res.f_stderr[i], 2) +
                                   std::pow(w2 * res.f_stderr[i + 1], 2));
    if (second < res.min_second_difference) {
      res.min_second_difference = second;
      res.tolerance = 4.0 * sigma + kConvexityFloor;
    }
  }
  res.convex = res.min_second_difference >= -res.tolerance;
  return res;
}

}  // namespace avgent::mc
