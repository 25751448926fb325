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
#include <string>
#include <variant>
#include <vector>

#include "avgent/error.hpp"
#include "avgent/random.hpp"
#include "avgent/tensor.hpp"

namespace avgent {

/// Numerical slack for every channel invariant (trace preservation, Choi
/// positivity, Choi/Kraus consistency).
inline constexpr double kChannelTolerance = 1e-9;

/// Choi eigenvalues below this are dropped when extracting Kraus operators.
inline constexpr double kKrausCutoff = 1e-10;

/// rho -> lambda rho + (1 - lambda) Tr(rho) I/d
struct Depolarizing {
  std::size_t d = 2;
  double lambda = 1.0;
};

/// Qubit channel whose images of matrix units are
///   A(|0><0|) = diag(mu, nu), A(|1><1|) = diag(nu, mu),
///   A(|0><1|) = [[0, lambda], [kappa, 0]], A(|1><0|) = [[0, kappa], [lambda, 0]].
struct TwoRail {
  double mu = 1.0;
  double nu = 0.0;
  double lambda = 1.0;
  double kappa = 0.0;
};

/// Qubit channel scaling the Bloch vector by diag(l1, l2, l3).
struct BlochScaling {
  double l1 = 1.0;
  double l2 = 1.0;
  double l3 = 1.0;
};

/// Quantum-classical channel rho -> sum_k |k><k| Tr(X_k rho).
struct QCFamily {
  std::vector<ComplexMatrix> povm;
};

using FamilySpec = std::variant<Depolarizing, TwoRail, BlochScaling, QCFamily>;

/// Measure-and-prepare form rho -> sum_k sigma_k Tr(X_k rho).
struct HolevoForm {
  std::vector<ComplexMatrix> sigmas;
  std::vector<ComplexMatrix> povm;
};

/// Throws ValidationError unless the POVM sums to I, every element is PSD,
/// and every sigma is a density matrix.
void validate_holevo(const HolevoForm& h);

/// A completely positive trace-preserving map on d x d matrices, held in
/// both Kraus and Choi form. The Choi matrix follows the output-first
/// convention  Choi = sum_{x,y} A(|x><y|) (x) |x><y|,  so that
///   <a x| Choi |b y> = <a| A(|x><y|) |b>.
class Channel {
 public:
  static Channel from_kraus(std::vector<ComplexMatrix> kraus, std::string label = "kraus");
  static Channel from_choi(ComplexMatrix choi, std::string label = "choi");
  static Channel from_holevo(HolevoForm form, std::string label = "holevo");
  static Channel from_family(const FamilySpec& spec);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& choi() const { return choi_; }
  const std::optional<HolevoForm>& holevo() const { return holevo_; }
  const std::optional<FamilySpec>& family() const { return family_; }
  const std::string& label() const { return label_; }

  /// A(|x><y|), read off the Choi matrix.
  ComplexMatrix image_of_unit(std::size_t x, std::size_t y) const;

  /// Hash of the Choi entries rounded to 1e-12.
  std::uint64_t fingerprint() const;

 private:
  Channel() = default;
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
  std::optional<HolevoForm> holevo_;
  std::optional<FamilySpec> family_;
  std::string label_;
};

Channel build(const FamilySpec& spec);
Channel build(const HolevoForm& form);

ComplexMatrix choi_from_kraus(std::span<const ComplexMatrix> kraus);
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t d);

/// sum_i K_i rho K_i^dagger
ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho);

/// A^{(x)n}(rho). Qubit depolarizing channels take the Pauli-basis route;
/// everything else goes site by site through the Kraus operators.
ComplexMatrix apply_tensor_power(const Channel& ch, int n, const ComplexMatrix& rho,
                                 const Limits& limits = {});

/// Site-by-site Kraus application; never forms Kraus operators on the big space.
ComplexMatrix apply_tensor_power_kraus(const Channel& ch, int n, const ComplexMatrix& rho,
                                       const Limits& limits = {});

/// Qubit depolarizing channel applied by expanding rho in the n-fold Pauli
/// basis and scaling every weight-w coefficient by lambda^w.
ComplexMatrix apply_depolarizing_pauli(double lambda, int n, const ComplexMatrix& rho,
                                       const Limits& limits = {});

/// D (x) E acting on C^{dD} (x) C^{dE}.
Channel tensor_product(const Channel& first, const Channel& second);

/// ||A(I) - I||_F <= 1e-9
bool is_unital(const Channel& ch);

/// Every Choi entry real and nonnegative (up to 1e-12) in the stored basis.
bool is_entrywise_positive(const Channel& ch);

/// |l1| + |l2| + |l3| <= 1
bool is_eb_qubit_bloch(double l1, double l2, double l3);

enum class SigmaCondition { holds, violated, not_checked };

/// Exhaustively checks Re Tr(sigma_{k1} ... sigma_{kr}) >= -1e-12 over all
/// r-tuples. Reports not_checked when |sigmas|^r exceeds the tuple cap.
SigmaCondition eb_sigma_condition(const HolevoForm& h, int r, const Limits& limits = {});

/// Channel with `num_kraus` random Kraus operators, normalized to be trace
/// preserving.
Channel random_channel(std::size_t d, std::size_t num_kraus, Rng& rng);

/// POVM with `count` full-rank elements on C^d.
std::vector<ComplexMatrix> random_povm(std::size_t d, std::size_t count, Rng& rng);

}  // namespace avgent
