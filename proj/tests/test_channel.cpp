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

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"

#include "avgent/channel.hpp"
#include "avgent/channel_io.hpp"
#include "avgent/error.hpp"
#include "avgent/random.hpp"
#include "avgent/tensor.hpp"

using namespace avgent;

namespace {

Channel depol(double lambda, std::size_t d = 2) { return build(FamilySpec{Depolarizing{d, lambda}}); }

// Replaces the sites in `mask` (bit k = site k, site 0 most significant) by
// I/2 after tracing them out.
ComplexMatrix trace_and_replace(const ComplexMatrix& rho, int n, unsigned mask) {
  const std::size_t dim = rho.rows();
  std::size_t site_bits = 0;
  for (int k = 0; k < n; ++k) {
    if (mask & (1u << k)) site_bits |= std::size_t{1} << (n - 1 - k);
  }
  const int traced = std::popcount(mask);
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & site_bits) != (j & site_bits)) continue;
      Complex acc = 0.0;
      for (std::size_t s = 0; s < dim; ++s) {
        if ((s & ~site_bits) != 0) continue;
        acc += rho((i & ~site_bits) | s, (j & ~site_bits) | s);
      }
      out(i, j) = acc / std::pow(2.0, traced);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("depolarizing channel basics") {
  const Channel id = depol(1.0);
  CHECK(std::abs(trace(matmul(id.choi(), id.choi())) - Complex(4.0)) < 1e-12);
  Rng rng(1);
  const ComplexMatrix rho = random_density_matrix(2, rng);
  CHECK(max_abs_diff(apply(id, rho), rho) < 1e-12);
  const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
  CHECK(max_abs_diff(apply(depol(0.0), rho), half) < 1e-12);
  const double lambda = 0.3;
  const ComplexMatrix expected = rho * Complex(lambda) + half * Complex(1.0 - lambda);
  CHECK(max_abs_diff(apply(depol(lambda), rho), expected) < 1e-12);
  CHECK(is_unital(depol(0.4)));
  CHECK(is_entrywise_positive(depol(0.4)));
  CHECK_THROWS_AS(depol(1.2), ValidationError);
  CHECK_THROWS_AS(depol(-0.5), ValidationError);
  CHECK_NOTHROW(depol(-1.0 / 3.0));
}

TEST_CASE("general-d depolarizing channel is validated through its Choi matrix") {
  CHECK_NOTHROW(depol(0.5, 3));
  CHECK_NOTHROW(depol(-1.0 / 8.0, 3));
  CHECK_THROWS_AS(depol(-0.2, 3), ValidationError);
}

TEST_CASE("two-rail with depolarizing parameters equals depolarizing") {
  for (double lambda : {0.0, 0.3, 0.8, 1.0}) {
    const Channel t = build(FamilySpec{TwoRail{(1 + lambda) / 2, (1 - lambda) / 2, lambda, 0.0}});
    CHECK(max_abs_diff(t.choi(), depol(lambda).choi()) < 1e-12);
  }
  CHECK_THROWS_AS(build(FamilySpec{TwoRail{0.7, 0.2, 0.1, 0.0}}), ValidationError);
  CHECK_THROWS_AS(build(FamilySpec{TwoRail{0.3, 0.7, 0.1, 0.0}}), ValidationError);
  CHECK_THROWS_AS(build(FamilySpec{TwoRail{0.6, 0.4, 0.9, 0.0}}), ValidationError);
}

TEST_CASE("Bloch scaling channel") {
  const Channel b = build(FamilySpec{BlochScaling{0.2, 0.3, 0.4}});
  // The Bloch vector (x, y, z) maps to (0.2 x, 0.3 y, 0.4 z).
  const Complex i(0.0, 1.0);
  const ComplexMatrix rho{{0.5 + 0.1, 0.2 - 0.3 * i}, {0.2 + 0.3 * i, 0.5 - 0.1}};
  const ComplexMatrix expected{{0.5 + 0.04, 0.04 - 0.09 * i}, {0.04 + 0.09 * i, 0.5 - 0.04}};
  CHECK(max_abs_diff(apply(b, rho), expected) < 1e-12);
  CHECK(max_abs_diff(build(FamilySpec{BlochScaling{0.6, 0.6, 0.6}}).choi(), depol(0.6).choi()) < 1e-12);
  CHECK(is_eb_qubit_bloch(0.2, 0.2, 0.2));
  CHECK_FALSE(is_eb_qubit_bloch(0.5, 0.5, 0.5));
  CHECK_THROWS_AS(build(FamilySpec{BlochScaling{1.0, 1.0, -1.0}}), ValidationError);
}

TEST_CASE("Choi and Kraus forms agree") {
  Rng rng(7);
  for (std::size_t d = 2; d <= 3; ++d) {
    const Channel ch = random_channel(d, 3, rng);
    const auto kraus = kraus_from_choi(ch.choi(), d);
    CHECK(max_abs_diff(choi_from_kraus(kraus), ch.choi()) < 1e-9);
    const Channel rebuilt = Channel::from_choi(ch.choi());
    const ComplexMatrix rho = random_density_matrix(d, rng);
    CHECK(max_abs_diff(apply(rebuilt, rho), apply(ch, rho)) < 1e-10);
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t y = 0; y < d; ++y) {
        ComplexMatrix unit(d, d);
        unit(x, y) = 1.0;
        CHECK(max_abs_diff(ch.image_of_unit(x, y), apply(ch, unit)) < 1e-12);
      }
    }
  }
  // Rank-deficient Choi (identity channel) yields a single Kraus operator.
  CHECK(kraus_from_choi(depol(1.0).choi(), 2).size() == 1);
}

TEST_CASE("invalid Kraus and Choi inputs name the broken invariant") {
  const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
  try {
    Channel::from_kraus({half});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("trace preservation") != std::string::npos);
  }
  ComplexMatrix bad = depol(0.5).choi();
  // (0,0) and (2,2) are the two outputs of |0><0|; moving weight between
  // them keeps the partial trace and breaks positivity.
  bad(0, 0) = -0.25;
  bad(2, 2) = 1.25;
  try {
    Channel::from_choi(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("positiv") != std::string::npos);
  }
  CHECK_THROWS_AS(Channel::from_choi(ComplexMatrix(3, 3)), ValidationError);
}

TEST_CASE("tensor power: Pauli route, Kraus route and the subset formula agree") {
  Rng rng(13);
  for (int n = 1; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const ComplexMatrix rho = random_density_matrix(dim, rng);
    for (double lambda : {0.0, 0.37, 1.0}) {
      const Channel ch = depol(lambda);
      const ComplexMatrix fast = apply_depolarizing_pauli(lambda, n, rho);
      const ComplexMatrix generic = apply_tensor_power_kraus(ch, n, rho);
      CHECK(max_abs_diff(fast, generic) < 1e-10);
      ComplexMatrix subset(dim, dim);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int t = std::popcount(mask);
        const double w = std::pow(lambda, n - t) * std::pow(1.0 - lambda, t);
        if (w != 0.0) subset += trace_and_replace(rho, n, mask) * Complex(w);
      }
      CHECK(max_abs_diff(fast, subset) < 1e-9);
    }
  }
  const ComplexMatrix rho = random_density_matrix(2, rng);
  const Channel ch = random_channel(2, 2, rng);
  CHECK(max_abs_diff(apply_tensor_power(ch, 1, rho), apply(ch, rho)) < 1e-12);
}

TEST_CASE("tensor power edge cases") {
  Rng rng(19);
  const ComplexMatrix rho = random_density_matrix(4, rng);
  CHECK(max_abs_diff(apply_tensor_power(depol(0.0), 2, rho),
                     ComplexMatrix::identity(4) * Complex(0.25)) < 1e-12);
  CHECK(max_abs_diff(apply_tensor_power(depol(1.0), 2, rho), rho) < 1e-12);
  // Bell state through the fast and generic paths.
  std::vector<Complex> bell{1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  const ComplexMatrix phi = ComplexMatrix::outer(bell);
  CHECK(max_abs_diff(apply_tensor_power(depol(0.5), 2, phi),
                     apply_tensor_power_kraus(depol(0.5), 2, phi)) < 1e-10);
  CHECK_THROWS_AS(apply_tensor_power(depol(0.5), 3, rho), ArgumentError);
  CHECK_THROWS_AS(apply_tensor_power(depol(0.5), 13, ComplexMatrix(8192, 8192)),
                  ResourceLimitError);
}

TEST_CASE("tensor product channel acts factorwise") {
  Rng rng(23);
  const Channel a = random_channel(2, 2, rng);
  const Channel b = random_channel(3, 2, rng);
  const Channel ab = tensor_product(a, b);
  CHECK(ab.dim() == 6);
  const ComplexMatrix ra = random_density_matrix(2, rng), rb = random_density_matrix(3, rng);
  CHECK(max_abs_diff(apply(ab, kron(ra, rb)), kron(apply(a, ra), apply(b, rb))) < 1e-12);
}

TEST_CASE("QC and measure-and-prepare channels") {
  Rng rng(31);
  const auto povm = random_povm(3, 3, rng);
  const Channel qc = build(FamilySpec{QCFamily{povm}});
  const ComplexMatrix rho = random_density_matrix(3, rng);
  const ComplexMatrix out = apply(qc, rho);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(out(i, i) - trace(matmul(povm[i], rho))) < 1e-12);
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(out(i, j)) < 1e-12);
    }
  }
  REQUIRE(qc.holevo().has_value());
  CHECK(eb_sigma_condition(*qc.holevo(), 5) == SigmaCondition::holds);
  CHECK_THROWS_AS(build(FamilySpec{QCFamily{random_povm(2, 3, rng)}}), ValidationError);

  // Single sigma: the replacement channel.
  HolevoForm single{{random_density_matrix(2, rng)}, {ComplexMatrix::identity(2)}};
  CHECK(eb_sigma_condition(single, 4) == SigmaCondition::holds);
  // Non-commuting sigmas: pairs always have nonnegative overlap.
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  const ComplexMatrix zero{{1.0, 0.0}, {0.0, 0.0}};
  HolevoForm pair{{zero, plus}, {zero, ComplexMatrix::identity(2) - zero}};
  CHECK(eb_sigma_condition(pair, 2) == SigmaCondition::holds);
  // Pure states at 120 degrees on the real Bloch circle: Tr(s0 s1 s2) < 0.
  std::vector<ComplexMatrix> tri;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 3.0;
    tri.push_back(ComplexMatrix{{0.5 * (1 + std::cos(t)), 0.5 * std::sin(t)},
                                {0.5 * std::sin(t), 0.5 * (1 - std::cos(t))}});
  }
  std::vector<ComplexMatrix> tri_povm;
  for (const auto& s : tri) tri_povm.push_back(s * Complex(2.0 / 3.0));
  HolevoForm trine{tri, tri_povm};
  CHECK(eb_sigma_condition(trine, 2) == SigmaCondition::holds);
  CHECK(eb_sigma_condition(trine, 3) == SigmaCondition::violated);
  Limits tiny;
  tiny.max_sigma_tuples = 10;
  CHECK(eb_sigma_condition(trine, 3, tiny) == SigmaCondition::not_checked);
  // The trine measure-and-prepare channel is itself a valid channel.
  CHECK_NOTHROW(build(trine));
  HolevoForm broken{{zero}, {zero}};
  CHECK_THROWS_AS(build(broken), ValidationError);
}

TEST_CASE("channel JSON parsing") {
  using nlohmann::json;
  const Channel d = channel_from_json(json::parse(R"({"family":"depolarizing","d":2,"lambda":0.5})"));
  CHECK(max_abs_diff(d.choi(), depol(0.5).choi()) < 1e-15);
  const Channel t = channel_from_json(
      json::parse(R"({"family":"two_rail","mu":0.75,"nu":0.25,"lambda":0.5,"kappa":0})"));
  CHECK(max_abs_diff(t.choi(), depol(0.5).choi()) < 1e-15);
  const Channel k = channel_from_json(json::parse(R"({"kraus":[[[1,0],[0,0]],[[0,1],[0,0]]]})"));
  CHECK(k.dim() == 2);
  const Channel c = channel_from_json(json{{"choi", matrix_to_json(depol(0.2).choi())}});
  CHECK(max_abs_diff(c.choi(), depol(0.2).choi()) < 1e-15);
  const Channel h = channel_from_json(json::parse(
      R"({"holevo":{"sigmas":[[[1,0],[0,0]],[[0.5,0],[0,0.5]]],"povm":[[[1,0],[0,0]],[[0,0],[0,1]]]}})"));
  REQUIRE(h.holevo().has_value());
  const Channel q = channel_from_json(
      json::parse(R"({"family":"qc","povm":[[[0.5,0.5],[0.5,0.5]],[[0.5,-0.5],[-0.5,0.5]]]})"));
  CHECK(q.dim() == 2);
}

TEST_CASE("channel JSON errors name the path") {
  using nlohmann::json;
  auto message = [](const char* text) {
    try {
      channel_from_json(json::parse(text));
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"kraus":[[[1,0],[0,"x"]]]})").find("$.kraus[0][1][1]") != std::string::npos);
  CHECK(message(R"({"kraus":[[[1,0],[0]]]})").find("$.kraus[0][1]") != std::string::npos);
  CHECK(message(R"({"family":"depolarizing"})").find("$.lambda") != std::string::npos);
  CHECK(message(R"({"family":"nope"})").find("$.family") != std::string::npos);
  CHECK(message(R"({"holevo":{"sigmas":[[[1]]]}})").find("$.holevo.povm") != std::string::npos);
  CHECK(message(R"([1,2])").find("$") != std::string::npos);
  CHECK_THROWS_AS(load_channel("/nonexistent/channel.json"), ArgumentError);
}

TEST_CASE("fingerprints separate parameters") {
  CHECK(depol(0.5).fingerprint() == depol(0.5).fingerprint());
  CHECK(depol(0.5).fingerprint() != depol(0.5000001).fingerprint());
}
