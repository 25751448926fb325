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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "avgent/error.hpp"

namespace avgent {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Entries are finite by construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Tolerance on ||a - a^dagger||_F for a matrix to count as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

/// Kronecker product. result[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = Limits{}.max_matrix_dim);

/// k-fold Kronecker power; kron_power(a, 0) is the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, int k,
                         std::size_t max_dim = Limits{}.max_matrix_dim);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix matpow(const ComplexMatrix& a, int k);
double frobenius_norm(const ComplexMatrix& a);
/// Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTolerance);

/// Eigenvalues of a Hermitian matrix, sorted descending. The input is
/// symmetrized as (a + a^dagger)/2 before decomposition.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

struct HermitianEigensystem {
  std::vector<double> values;            // descending
  std::vector<std::vector<Complex>> vectors;  // vectors[i] pairs with values[i]
};
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a);

/// Inverse square root of a Hermitian positive definite matrix.
ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& a);

/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace avgent
