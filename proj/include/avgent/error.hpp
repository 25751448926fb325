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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace avgent {

// Error taxonomy. The CLI maps these onto exit codes (2 for input problems,
// 3 for resource limits).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch, bad parameter value, malformed notation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A constructed object fails one of its invariants (CPTP, POVM, PSD...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed a configured size cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of a closed-form result does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Root bracketing failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Floating point results that cannot occur for valid inputs.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Size caps shared by every module. Defaults target desk-scale runs.
struct Limits {
  std::size_t max_matrix_dim = 4096;
  int max_perm_degree = 8;
  std::uint64_t max_index_tuples = 10'000'000;
  std::uint64_t max_sigma_tuples = 10'000'000;
};

}  // namespace avgent
