// Copyright 2026 The Hyena Authors
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

#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "hyena/modring/polynomial.hpp"

namespace hyena::modring {

/// Row of unreduced 128-bit multiply-accumulate sums over Z_q.
///
/// Capacity is checked once, when the accumulation plan is declared.
class WideAccumulator {
 public:
  static constexpr int kBoundBits = 120;

  WideAccumulator() = default;

  WideAccumulator(std::size_t n, u64 modulus, Domain domain, u64 max_scalar, std::size_t max_terms)
      : coeffs_(n, 0), modulus_(modulus), domain_(domain), max_scalar_(max_scalar), max_terms_(max_terms) {
    if (!fits(modulus, max_scalar, max_terms)) {
      throw CapacityError("lazy accumulation plan of " + std::to_string(max_terms) + " terms with scalar bound " +
                          std::to_string(max_scalar) + " can exceed 2^120");
    }
  }

  /// Whether terms * s_max * (q-1) stays below 2^120.
  static bool fits(u64 modulus, u64 max_scalar, std::size_t max_terms) {
    const u128 per_term = static_cast<u128>(max_scalar) * (modulus - 1);
    if (per_term == 0 || max_terms == 0) return true;
    const u128 limit = u128{1} << kBoundBits;
    return static_cast<u128>(max_terms) <= (limit - 1) / per_term;
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  u64 modulus() const noexcept { return modulus_; }
  Domain domain() const noexcept { return domain_; }
  std::size_t term_count() const noexcept { return term_count_; }
  std::size_t max_terms() const noexcept { return max_terms_; }
  u64 max_scalar() const noexcept { return max_scalar_; }
  const std::vector<u128>& coeffs() const noexcept { return coeffs_; }
  std::vector<u128>& coeffs() noexcept { return coeffs_; }

  /// acc += scalar * poly with no modular reduction.
  void lazy_mac(const Polynomial& poly, u64 scalar) {
    if (poly.modulus != modulus_ || poly.size() != coeffs_.size()) throw ModulusMismatch("lazy_mac: operand mismatch");
    if (poly.domain != domain_) throw DomainError("lazy_mac: operand in different domain");
    if (scalar > max_scalar_) throw CapacityError("lazy_mac: scalar exceeds declared bound");
    if (term_count_ >= max_terms_) throw CapacityError("lazy_mac: accumulation plan exceeded");
    ++term_count_;
    if (scalar == 0) return;
    const u64* src = poly.coeffs.data();
    u128* dst = coeffs_.data();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) dst[i] += static_cast<u128>(src[i]) * scalar;
  }

  /// Largest accumulator value, as a bit width.
  int max_bits() const noexcept {
    int best = 0;
    for (u128 v : coeffs_) {
      const u64 hi = static_cast<u64>(v >> 64);
      const int bits = hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<u64>(v));
      if (bits > best) best = bits;
    }
    return best;
  }

  Polynomial reduce() const {
    const Modulus m(modulus_);
    Polynomial r(coeffs_.size(), modulus_, domain_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = m.reduce(coeffs_[i]);
    return r;
  }

 private:
  std::vector<u128> coeffs_;
  u64 modulus_ = 0;
  Domain domain_ = Domain::coefficient;
  u64 max_scalar_ = 0;
  std::size_t max_terms_ = 0;
  std::size_t term_count_ = 0;
};

inline WideAccumulator lazy_mac(WideAccumulator acc, const Polynomial& poly, u64 scalar) {
  acc.lazy_mac(poly, scalar);
  return acc;
}

inline Polynomial reduce(const WideAccumulator& acc) { return acc.reduce(); }

}  // namespace hyena::modring
