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

#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "avgent/error.hpp"
#include "avgent/random.hpp"
#include "avgent/tensor.hpp"

using namespace avgent;

TEST_CASE("kron follows the (i1,i2),(j1,j2) index layout") {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(0, 1) == Complex(1.0));
  CHECK(k(1, 0) == Complex(1.0));
  CHECK(k(2, 3) == Complex(4.0));
  CHECK(k(3, 0) == Complex(3.0));
  CHECK(k(0, 0) == Complex(0.0));
}

TEST_CASE("kron mixed-product property") {
  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix a = ginibre(2, rng), b = ginibre(3, rng);
    const ComplexMatrix c = ginibre(2, rng), d = ginibre(3, rng);
    const ComplexMatrix lhs = matmul(kron(a, b), kron(c, d));
    const ComplexMatrix rhs = kron(matmul(a, c), matmul(b, d));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("kron refuses oversized results") {
  const ComplexMatrix a = ComplexMatrix::identity(64);
  CHECK_THROWS_AS(kron(a, a, 1024), ResourceLimitError);
  CHECK_THROWS_AS(kron_power(ComplexMatrix::identity(2), 13), ResourceLimitError);
  CHECK(kron_power(ComplexMatrix::identity(2), 0).rows() == 1);
}

TEST_CASE("matmul shape mismatch is an argument error") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ArgumentError);
}

TEST_CASE("trace, dagger, matpow and trace_of_product") {
  const Complex i(0.0, 1.0);
  const ComplexMatrix a{{1.0, i}, {2.0, 3.0}};
  CHECK(trace(a) == Complex(4.0));
  CHECK(dagger(a)(0, 1) == Complex(2.0));
  CHECK(dagger(a)(1, 0) == -i);
  const ComplexMatrix a3 = matpow(a, 3);
  CHECK(max_abs_diff(a3, matmul(a, matmul(a, a))) < 1e-12);
  CHECK(max_abs_diff(matpow(a, 0), ComplexMatrix::identity(2)) == 0.0);
  Rng rng(3);
  const ComplexMatrix x = ginibre(4, rng), y = ginibre(4, rng);
  CHECK(std::abs(trace_of_product(x, y) - trace(matmul(x, y))) < 1e-12);
}

TEST_CASE("hermitian eigenvalues of known matrices") {
  const ComplexMatrix pauli_x{{0.0, 1.0}, {1.0, 0.0}};
  const auto ev = hermitian_eigenvalues(pauli_x);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
  const double diag[] = {0.25, 3.0, -1.0};
  const auto ev2 = hermitian_eigenvalues(ComplexMatrix::diagonal(std::span<const double>(diag)));
  CHECK(ev2 == std::vector<double>{3.0, 0.25, -1.0});
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), ArgumentError);
}

TEST_CASE("eigensystem reconstructs the matrix") {
  Rng rng(5);
  const ComplexMatrix h = random_hermitian(5, rng);
  const HermitianEigensystem es = hermitian_eigensystem(h);
  ComplexMatrix rebuilt(5, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    rebuilt += ComplexMatrix::outer(es.vectors[k]) * Complex(es.values[k], 0.0);
  }
  CHECK(max_abs_diff(rebuilt, h) < 1e-10);
}

TEST_CASE("Hoffman-Wielandt: sorted spectra are closer than the Frobenius distance") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_hermitian(6, rng);
    const ComplexMatrix b = random_hermitian(6, rng);
    const auto ea = hermitian_eigenvalues(a);
    const auto eb = hermitian_eigenvalues(b);
    double s = 0.0;
    for (std::size_t k = 0; k < ea.size(); ++k) s += (ea[k] - eb[k]) * (ea[k] - eb[k]);
    CHECK(std::sqrt(s) <= frobenius_norm(a - b) + 1e-12);
  }
}

TEST_CASE("inverse square root of a positive matrix") {
  Rng rng(23);
  const ComplexMatrix g = ginibre(4, rng);
  const ComplexMatrix s = matmul(g, dagger(g)) + ComplexMatrix::identity(4);
  const ComplexMatrix w = inverse_sqrt_psd(s);
  CHECK(max_abs_diff(matmul(w, matmul(s, w)), ComplexMatrix::identity(4)) < 1e-10);
}

TEST_CASE("random unitary is unitary and density matrices are states") {
  Rng rng(29);
  const ComplexMatrix u = random_unitary(5, rng);
  CHECK(max_abs_diff(matmul(u, dagger(u)), ComplexMatrix::identity(5)) < 1e-12);
  const ComplexMatrix rho = random_density_matrix(4, rng);
  CHECK(std::abs(trace(rho) - Complex(1.0)) < 1e-12);
  CHECK(hermitian_eigenvalues(rho).back() > -1e-12);
}

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(stream_seed(7, 0)), b(stream_seed(7, 0)), c(stream_seed(7, 1));
  const double x = a.normal();
  CHECK(x == b.normal());
  CHECK(x != c.normal());
  Rng u(1);
  for (int t = 0; t < 1000; ++t) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
}
