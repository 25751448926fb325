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

#include "avgent/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace avgent {

namespace {

std::size_t integer_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

double min_eigenvalue(const ComplexMatrix& a) { return hermitian_eigenvalues(a).back(); }

template <typename ImageFn>
ComplexMatrix choi_from_images(std::size_t d, ImageFn image) {
  ComplexMatrix choi(d * d, d * d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      const ComplexMatrix img = image(x, y);
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) choi(a * d + x, b * d + y) = img(a, b);
      }
    }
  }
  return choi;
}

ComplexMatrix two_rail_image(const TwoRail& t, std::size_t x, std::size_t y) {
  if (x == 0 && y == 0) return {{t.mu, 0.0}, {0.0, t.nu}};
  if (x == 1 && y == 1) return {{t.nu, 0.0}, {0.0, t.mu}};
  if (x == 0 && y == 1) return {{0.0, t.lambda}, {t.kappa, 0.0}};
  return {{0.0, t.kappa}, {t.lambda, 0.0}};
}

TwoRail two_rail_of(const BlochScaling& b) {
  return {(1.0 + b.l3) / 2.0, (1.0 - b.l3) / 2.0, (b.l1 + b.l2) / 2.0, (b.l1 - b.l2) / 2.0};
}

void require_square_of_dim(const ComplexMatrix& m, std::size_t d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) {
    throw ValidationError(what + ": expected " + std::to_string(d) + "x" + std::to_string(d) +
                          " matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

struct ChoiBuilder {
  ComplexMatrix operator()(const Depolarizing& p) const {
    if (p.d < 2) throw ValidationError("depolarizing: dimension must be at least 2");
    if (!std::isfinite(p.lambda)) throw ValidationError("depolarizing: lambda is not finite");
    if (p.d == 2 && (p.lambda < -1.0 / 3.0 - 1e-12 || p.lambda > 1.0 + 1e-12)) {
      throw ValidationError("depolarizing: complete positivity requires -1/3 <= lambda <= 1");
    }
    const std::size_t d = p.d;
    return choi_from_images(d, [&](std::size_t x, std::size_t y) {
      ComplexMatrix img(d, d);
      img(x, y) += p.lambda;
      if (x == y) {
        for (std::size_t i = 0; i < d; ++i) img(i, i) += (1.0 - p.lambda) / static_cast<double>(d);
      }
      return img;
    });
  }
  ComplexMatrix operator()(const TwoRail& t) const {
    if (t.mu < 0 || t.nu < 0 || t.lambda < 0 || t.kappa < 0) {
      throw ValidationError("two_rail: parameters must be nonnegative");
    }
    if (t.mu < t.nu) throw ValidationError("two_rail: requires mu >= nu");
    if (t.lambda < t.kappa) throw ValidationError("two_rail: requires lambda >= kappa");
    return choi_from_images(2, [&](std::size_t x, std::size_t y) { return two_rail_image(t, x, y); });
  }
  ComplexMatrix operator()(const BlochScaling& b) const {
    const TwoRail t = two_rail_of(b);
    return choi_from_images(2, [&](std::size_t x, std::size_t y) { return two_rail_image(t, x, y); });
  }
  ComplexMatrix operator()(const QCFamily& q) const {
    if (q.povm.empty()) throw ValidationError("qc: empty POVM");
    const std::size_t d = q.povm.front().rows();
    if (q.povm.size() > d) {
      throw ValidationError("qc: POVM has more elements than basis states");
    }
    HolevoForm h;
    for (std::size_t k = 0; k < q.povm.size(); ++k) {
      ComplexMatrix sigma(d, d);
      sigma(k, k) = 1.0;
      h.sigmas.push_back(std::move(sigma));
    }
    h.povm = q.povm;
    validate_holevo(h);
    return choi_from_images(d, [&](std::size_t x, std::size_t y) {
      ComplexMatrix img(d, d);
      for (std::size_t k = 0; k < q.povm.size(); ++k) img(k, k) += q.povm[k](y, x);
      return img;
    });
  }
};

std::string family_label(const FamilySpec& spec) {
  struct Namer {
    std::string operator()(const Depolarizing& p) const {
      return "depolarizing(d=" + std::to_string(p.d) + ",lambda=" + std::to_string(p.lambda) + ")";
    }
    std::string operator()(const TwoRail&) const { return "two_rail"; }
    std::string operator()(const BlochScaling&) const { return "bloch"; }
    std::string operator()(const QCFamily&) const { return "qc"; }
  };
  return std::visit(Namer{}, spec);
}

}  // namespace

void validate_holevo(const HolevoForm& h) {
  if (h.sigmas.empty()) throw ValidationError("holevo.sigmas: empty list");
  if (h.sigmas.size() != h.povm.size()) {
    throw ValidationError("holevo: sigmas and povm must have the same length");
  }
  const std::size_t d = h.sigmas.front().rows();
  ComplexMatrix total(d, d);
  for (std::size_t k = 0; k < h.sigmas.size(); ++k) {
    const std::string tag = "holevo.sigmas[" + std::to_string(k) + "]";
    require_square_of_dim(h.sigmas[k], d, tag);
    if (!is_hermitian(h.sigmas[k])) throw ValidationError(tag + ": not Hermitian");
    if (std::abs(trace(h.sigmas[k]) - 1.0) > kChannelTolerance) {
      throw ValidationError(tag + ": unit trace violated");
    }
    if (min_eigenvalue(h.sigmas[k]) < -kChannelTolerance) {
      throw ValidationError(tag + ": not positive semidefinite");
    }
    const std::string ptag = "holevo.povm[" + std::to_string(k) + "]";
    require_square_of_dim(h.povm[k], d, ptag);
    if (!is_hermitian(h.povm[k])) throw ValidationError(ptag + ": not Hermitian");
    if (min_eigenvalue(h.povm[k]) < -kChannelTolerance) {
      throw ValidationError(ptag + ": not positive semidefinite");
    }
    total += h.povm[k];
  }
  if (max_abs_diff(total, ComplexMatrix::identity(d)) > kChannelTolerance) {
    throw ValidationError("holevo.povm: elements do not sum to the identity");
  }
}

ComplexMatrix choi_from_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw ValidationError("kraus: empty list");
  const std::size_t d = kraus.front().rows();
  ComplexMatrix choi(d * d, d * d);
  // <a x|Choi|b y> = sum_k K[a][x] conj(K[b][y])
  for (const auto& k : kraus) {
    require_square_of_dim(k, d, "kraus");
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t x = 0; x < d; ++x) {
        const Complex left = k(a, x);
        if (left == Complex{}) continue;
        for (std::size_t b = 0; b < d; ++b) {
          for (std::size_t y = 0; y < d; ++y) choi(a * d + x, b * d + y) += left * std::conj(k(b, y));
        }
      }
    }
  }
  return choi;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t d) {
  const HermitianEigensystem es = hermitian_eigensystem(choi);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    if (es.values[i] < kKrausCutoff) continue;
    const double w = std::sqrt(es.values[i]);
    ComplexMatrix k(d, d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t x = 0; x < d; ++x) k(a, x) = w * es.vectors[i][a * d + x];
    }
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw ValidationError("choi: matrix has no positive eigenvalue");
  return kraus;
}

Channel Channel::from_kraus(std::vector<ComplexMatrix> kraus, std::string label) {
  Channel ch;
  ch.choi_ = choi_from_kraus(kraus);
  ch.dim_ = kraus.front().rows();
  ch.kraus_ = std::move(kraus);
  ch.label_ = std::move(label);
  ch.validate();
  return ch;
}

Channel Channel::from_choi(ComplexMatrix choi, std::string label) {
  if (!choi.is_square()) throw ValidationError("choi: matrix is not square");
  const std::size_t d = integer_sqrt(choi.rows());
  if (d * d != choi.rows() || d == 0) {
    throw ValidationError("choi: dimension " + std::to_string(choi.rows()) + " is not a square");
  }
  if (!is_hermitian(choi)) throw ValidationError("choi: not Hermitian");
  Channel ch;
  ch.dim_ = d;
  ch.kraus_ = kraus_from_choi(choi, d);
  ch.choi_ = std::move(choi);
  ch.label_ = std::move(label);
  ch.validate();
  return ch;
}

Channel Channel::from_holevo(HolevoForm form, std::string label) {
  validate_holevo(form);
  const std::size_t d = form.sigmas.front().rows();
  ComplexMatrix choi = choi_from_images(d, [&](std::size_t x, std::size_t y) {
    ComplexMatrix img(d, d);
    for (std::size_t k = 0; k < form.sigmas.size(); ++k) {
      img += form.sigmas[k] * form.povm[k](y, x);
    }
    return img;
  });
  Channel ch = from_choi(std::move(choi), std::move(label));
  ch.holevo_ = std::move(form);
  return ch;
}

Channel Channel::from_family(const FamilySpec& spec) {
  ComplexMatrix choi = std::visit(ChoiBuilder{}, spec);
  Channel ch = from_choi(std::move(choi), family_label(spec));
  ch.family_ = spec;
  if (const auto* qc = std::get_if<QCFamily>(&spec)) {
    HolevoForm h;
    const std::size_t d = ch.dim_;
    for (std::size_t k = 0; k < qc->povm.size(); ++k) {
      ComplexMatrix sigma(d, d);
      sigma(k, k) = 1.0;
      h.sigmas.push_back(std::move(sigma));
    }
    h.povm = qc->povm;
    ch.holevo_ = std::move(h);
  }
  return ch;
}

void Channel::validate() const {
  const std::size_t d = dim_;
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      Complex t{};
      for (std::size_t a = 0; a < d; ++a) t += choi_(a * d + x, a * d + y);
      const Complex expected = x == y ? Complex{1.0} : Complex{};
      if (std::abs(t - expected) > kChannelTolerance) {
        throw ValidationError("trace preservation violated: Tr A(|" + std::to_string(x) + "><" +
                              std::to_string(y) + "|) = " + std::to_string(t.real()) +
                              (t.imag() != 0.0 ? "+" + std::to_string(t.imag()) + "i" : ""));
      }
    }
  }
  if (min_eigenvalue(choi_) < -kChannelTolerance) {
    throw ValidationError("complete positivity violated: Choi matrix has a negative eigenvalue");
  }
  if (max_abs_diff(choi_from_kraus(kraus_), choi_) > kChannelTolerance) {
    throw ValidationError("Choi matrix does not match the Kraus operators");
  }
}

ComplexMatrix Channel::image_of_unit(std::size_t x, std::size_t y) const {
  const std::size_t d = dim_;
  ComplexMatrix img(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) img(a, b) = choi_(a * d + x, b * d + y);
  }
  return img;
}

std::uint64_t Channel::fingerprint() const {
  std::uint64_t h = splitmix64(dim_);
  const auto mix = [&h](double v) {
    const long long q = std::llround(v * 1e12);
    h = splitmix64(h ^ static_cast<std::uint64_t>(q));
  };
  for (Complex z : choi_.entries()) {
    mix(z.real());
    mix(z.imag());
  }
  return h;
}

Channel build(const FamilySpec& spec) { return Channel::from_family(spec); }

Channel build(const HolevoForm& form) { return Channel::from_holevo(form); }

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
    throw ArgumentError("apply: state is " + std::to_string(rho.rows()) + "x" +
                        std::to_string(rho.cols()) + ", channel dimension is " +
                        std::to_string(ch.dim()));
  }
  ComplexMatrix out(ch.dim(), ch.dim());
  for (const auto& k : ch.kraus()) out += matmul(matmul(k, rho), dagger(k));
  return out;
}

namespace {

std::size_t checked_power(std::size_t d, int n, const Limits& limits) {
  if (n < 1) throw ArgumentError("tensor power: n must be positive");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= d;
    if (total > limits.max_matrix_dim) {
      throw ResourceLimitError("tensor power: dimension " + std::to_string(d) + "^" +
                               std::to_string(n) + " exceeds max dimension " +
                               std::to_string(limits.max_matrix_dim));
    }
  }
  return total;
}

}  // namespace

ComplexMatrix apply_tensor_power_kraus(const Channel& ch, int n, const ComplexMatrix& rho,
                                       const Limits& limits) {
  const std::size_t d = ch.dim();
  const std::size_t big = checked_power(d, n, limits);
  if (rho.rows() != big || rho.cols() != big) {
    throw ArgumentError("apply_tensor_power: state dimension does not match d^n");
  }
  ComplexMatrix current = rho;
  ComplexMatrix left(big, big);
  ComplexMatrix next(big, big);
  std::size_t stride = big;
  for (int site = 0; site < n; ++site) {
    stride /= d;  // weight of this site's digit in the flat index
    std::fill(next.entries().begin(), next.entries().end(), Complex{});
    for (const auto& k : ch.kraus()) {
      // left = (K on site) * current
      for (std::size_t i = 0; i < big; ++i) {
        const std::size_t digit = (i / stride) % d;
        const std::size_t base = i - digit * stride;
        for (std::size_t j = 0; j < big; ++j) {
          Complex s{};
          for (std::size_t m = 0; m < d; ++m) s += k(digit, m) * current(base + m * stride, j);
          left(i, j) = s;
        }
      }
      // next += left * (K on site)^dagger
      for (std::size_t i = 0; i < big; ++i) {
        for (std::size_t j = 0; j < big; ++j) {
          const std::size_t digit = (j / stride) % d;
          const std::size_t base = j - digit * stride;
          Complex s{};
          for (std::size_t m = 0; m < d; ++m) s += left(i, base + m * stride) * std::conj(k(digit, m));
          next(i, j) += s;
        }
      }
    }
    std::swap(current, next);
  }
  return current;
}

ComplexMatrix apply_depolarizing_pauli(double lambda, int n, const ComplexMatrix& rho,
                                       const Limits& limits) {
  const std::size_t big = checked_power(2, n, limits);
  if (rho.rows() != big || rho.cols() != big) {
    throw ArgumentError("apply_tensor_power: state dimension does not match 2^n");
  }
  ComplexMatrix coeff = rho;
  const Complex i_unit{0.0, 1.0};
  // Forward transform: on every site the 2x2 block [[a,b],[c,d]] becomes the
  // coefficients (I, X, Y, Z) stored in the slots (a, b, c, d).
  for (int site = 0; site < n; ++site) {
    const std::size_t mask = std::size_t{1} << site;
    for (std::size_t r = 0; r < big; ++r) {
      if (r & mask) continue;
      for (std::size_t c = 0; c < big; ++c) {
        if (c & mask) continue;
        const Complex a = coeff(r, c);
        const Complex b = coeff(r, c | mask);
        const Complex cc = coeff(r | mask, c);
        const Complex dd = coeff(r | mask, c | mask);
        coeff(r, c) = 0.5 * (a + dd);
        coeff(r, c | mask) = 0.5 * (b + cc);
        coeff(r | mask, c) = 0.5 * i_unit * (b - cc);
        coeff(r | mask, c | mask) = 0.5 * (a - dd);
      }
    }
  }
  std::vector<double> weight_factor(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) weight_factor[static_cast<std::size_t>(w)] = std::pow(lambda, w);
  for (std::size_t r = 0; r < big; ++r) {
    for (std::size_t c = 0; c < big; ++c) {
      coeff(r, c) *= weight_factor[static_cast<std::size_t>(std::popcount(r | c))];
    }
  }
  for (int site = 0; site < n; ++site) {
    const std::size_t mask = std::size_t{1} << site;
    for (std::size_t r = 0; r < big; ++r) {
      if (r & mask) continue;
      for (std::size_t c = 0; c < big; ++c) {
        if (c & mask) continue;
        const Complex pi = coeff(r, c);
        const Complex px = coeff(r, c | mask);
        const Complex py = coeff(r | mask, c);
        const Complex pz = coeff(r | mask, c | mask);
        coeff(r, c) = pi + pz;
        coeff(r, c | mask) = px - i_unit * py;
        coeff(r | mask, c) = px + i_unit * py;
        coeff(r | mask, c | mask) = pi - pz;
      }
    }
  }
  return coeff;
}

ComplexMatrix apply_tensor_power(const Channel& ch, int n, const ComplexMatrix& rho,
                                 const Limits& limits) {
  if (ch.family()) {
    if (const auto* dep = std::get_if<Depolarizing>(&*ch.family()); dep && dep->d == 2) {
      return apply_depolarizing_pauli(dep->lambda, n, rho, limits);
    }
  }
  return apply_tensor_power_kraus(ch, n, rho, limits);
}

Channel tensor_product(const Channel& first, const Channel& second) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& a : first.kraus()) {
    for (const auto& b : second.kraus()) kraus.push_back(kron(a, b));
  }
  return Channel::from_kraus(std::move(kraus), first.label() + "(x)" + second.label());
}

bool is_unital(const Channel& ch) {
  const ComplexMatrix id = ComplexMatrix::identity(ch.dim());
  return frobenius_norm(apply(ch, id) - id) <= kChannelTolerance;
}

bool is_entrywise_positive(const Channel& ch) {
  return std::all_of(ch.choi().entries().begin(), ch.choi().entries().end(), [](Complex z) {
    return z.real() >= -1e-12 && std::abs(z.imag()) <= 1e-12;
  });
}

bool is_eb_qubit_bloch(double l1, double l2, double l3) {
  return std::abs(l1) + std::abs(l2) + std::abs(l3) <= 1.0;
}

SigmaCondition eb_sigma_condition(const HolevoForm& h, int r, const Limits& limits) {
  if (r < 1) throw ArgumentError("eb_sigma_condition: r must be positive");
  const std::size_t count = h.sigmas.size();
  if (count == 0) throw ArgumentError("eb_sigma_condition: no sigmas");
  double tuples = std::pow(static_cast<double>(count), r);
  if (tuples > static_cast<double>(limits.max_sigma_tuples)) return SigmaCondition::not_checked;

  // Odometer over (k_1..k_r); prefix products are reused across tuples that
  // share leading indices.
  const std::size_t d = h.sigmas.front().rows();
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  std::vector<ComplexMatrix> prefix(static_cast<std::size_t>(r) + 1);
  prefix[0] = ComplexMatrix::identity(d);
  std::size_t valid = 0;  // prefix[0..valid] are current
  while (true) {
    for (std::size_t i = valid; i < idx.size(); ++i) prefix[i + 1] = matmul(prefix[i], h.sigmas[idx[i]]);
    if (trace(prefix.back()).real() < -1e-12) return SigmaCondition::violated;
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < count) break;
      idx[pos] = 0;
      if (pos == 0) return SigmaCondition::holds;
    }
    valid = pos;
  }
}

std::vector<ComplexMatrix> random_povm(std::size_t d, std::size_t count, Rng& rng) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total(d, d);
  for (std::size_t k = 0; k < count; ++k) {
    const ComplexMatrix g = ginibre(d, rng);
    ComplexMatrix p = matmul(g, dagger(g));
    total += p;
    parts.push_back(std::move(p));
  }
  const ComplexMatrix s = inverse_sqrt_psd(total);
  for (auto& p : parts) {
    p = matmul(matmul(s, p), s);
    // restore exact Hermiticity lost to rounding
    p = (p + dagger(p)) * 0.5;
  }
  return parts;
}

Channel random_channel(std::size_t d, std::size_t num_kraus, Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix total(d, d);
  for (std::size_t k = 0; k < num_kraus; ++k) {
    g.push_back(ginibre(d, rng));
    total += matmul(dagger(g.back()), g.back());
  }
  const ComplexMatrix s = inverse_sqrt_psd(total);
  for (auto& k : g) k = matmul(k, s);
  return Channel::from_kraus(std::move(g), "random");
}

}  // namespace avgent
