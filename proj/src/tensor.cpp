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

#include "avgent/tensor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace avgent {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajorMatrix>;

ConstMap as_eigen(const ComplexMatrix& a) {
  return ConstMap(a.entries().data(), static_cast<Eigen::Index>(a.rows()),
                  static_cast<Eigen::Index>(a.cols()));
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw ArgumentError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ArgumentError("ComplexMatrix: " + std::to_string(entries_.size()) +
                        " entries for shape " + std::to_string(rows_) + "x" +
                        std::to_string(cols_));
  }
  if (!all_finite()) throw ArgumentError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ArgumentError("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw ArgumentError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  const std::size_t n = v.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ArgumentError("matrix addition: shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ArgumentError("matrix subtraction: shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw ResourceLimitError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " exceeds max dimension " + std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Complex s = a(i1, j1);
      if (s == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int k, std::size_t max_dim) {
  if (k < 0) throw ArgumentError("kron_power: negative exponent");
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int i = 0; i < k; ++i) out = kron(out, a, max_dim);
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  Eigen::Map<RowMajorMatrix> dst(out.entries().data(), static_cast<Eigen::Index>(out.rows()),
                                 static_cast<Eigen::Index>(out.cols()));
  dst.noalias() = as_eigen(a) * as_eigen(b);
  return out;
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

ComplexMatrix matpow(const ComplexMatrix& a, int k) {
  require_square(a, "matpow");
  if (k < 0) throw ArgumentError("matpow: negative exponent");
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  // binary exponentiation
  while (k > 0) {
    if (k & 1) result = matmul(result, base);
    k >>= 1;
    if (k > 0) base = matmul(base, base);
  }
  return result;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Complex z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ArgumentError("trace_of_product: shape mismatch");
  }
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  }
  return t;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  }
  return std::sqrt(s) <= tol;
}

namespace {

RowMajorMatrix symmetrized(const ComplexMatrix& a, const char* what) {
  require_square(a, what);
  if (!is_hermitian(a)) {
    throw ArgumentError(std::string(what) + ": matrix is not Hermitian within tolerance");
  }
  RowMajorMatrix m = as_eigen(a);
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  const RowMajorMatrix m = symmetrized(a, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a) {
  const RowMajorMatrix m = symmetrized(a, "hermitian_eigensystem");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigensystem: eigensolver did not converge");
  }
  const Eigen::Index n = m.rows();
  HermitianEigensystem out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.reserve(static_cast<std::size_t>(n));
  // Eigen sorts ascending
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    out.values.push_back(solver.eigenvalues()(k));
    const auto col = solver.eigenvectors().col(k);
    out.vectors.emplace_back(col.data(), col.data() + n);
  }
  return out;
}

ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& a) {
  const HermitianEigensystem es = hermitian_eigensystem(a);
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (es.values[k] <= 0.0) throw NumericalError("inverse_sqrt_psd: matrix is singular");
    const double w = 1.0 / std::sqrt(es.values[k]);
    const auto& v = es.vectors[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) += w * v[i] * std::conj(v[j]);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

}  // namespace avgent
