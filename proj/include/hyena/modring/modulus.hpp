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
#include <cstdint>
#include <stdexcept>

namespace hyena {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace modring {

/// A word-sized modulus with a precomputed Barrett reciprocal floor(2^128 / m).
///
/// All reductions accept 128-bit inputs below 2^120, which covers both a single
/// product of two residues (m < 2^60) and the lazy accumulators of WideAccumulator.
class Modulus {
 public:
  static constexpr int kMaxBits = 61;

  Modulus() = default;

  explicit Modulus(u64 value) : value_(value) {
    if (value < 2 || std::bit_width(value) > kMaxBits) {
      throw std::invalid_argument("modulus must be in [2, 2^61)");
    }
    const u128 ratio = (~u128{0}) / value;
    ratio_lo_ = static_cast<u64>(ratio);
    ratio_hi_ = static_cast<u64>(ratio >> 64);
  }

  u64 value() const noexcept { return value_; }
  int bit_count() const noexcept { return std::bit_width(value_); }

  /// Barrett reduction of x < 2^120 into [0, m).
  u64 reduce(u128 x) const noexcept {
    const u64 xl = static_cast<u64>(x);
    const u64 xh = static_cast<u64>(x >> 64);
    const u128 lo_lo = static_cast<u128>(xl) * ratio_lo_;
    const u128 mid = static_cast<u128>(xh) * ratio_lo_ + static_cast<u128>(xl) * ratio_hi_ + (lo_lo >> 64);
    const u128 quotient = static_cast<u128>(xh) * ratio_hi_ + (mid >> 64);
    u128 r = x - quotient * value_;
    // The quotient estimate is short by at most two.
    while (r >= value_) r -= value_;
    return static_cast<u64>(r);
  }

  u64 reduce(u64 x) const noexcept { return x >= value_ ? reduce(static_cast<u128>(x)) : x; }

  u64 add(u64 a, u64 b) const noexcept {
    const u64 s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + value_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : value_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return reduce(static_cast<u128>(a) * b); }

  u64 pow(u64 base, u64 exponent) const noexcept {
    u64 result = 1 % value_;
    base = reduce(base);
    while (exponent != 0) {
      if (exponent & 1) result = mul(result, base);
      base = mul(base, base);
      exponent >>= 1;
    }
    return result;
  }

  /// Multiplicative inverse; throws if gcd(a, m) != 1.
  u64 inverse(u64 a) const {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(value_), new_r = static_cast<i64>(reduce(a));
    while (new_r != 0) {
      const i64 q = r / new_r;
      const i64 tmp_t = t - q * new_t;
      t = new_t;
      new_t = tmp_t;
      const i64 tmp_r = r - q * new_r;
      r = new_r;
      new_r = tmp_r;
    }
    if (r != 1) throw std::invalid_argument("value is not invertible modulo m");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(value_)) : static_cast<u64>(t);
  }

  /// Representative in (-m/2, m/2].
  i64 centered(u64 a) const noexcept {
    return a > value_ / 2 ? static_cast<i64>(a) - static_cast<i64>(value_) : static_cast<i64>(a);
  }

  u64 from_signed(i64 v) const noexcept {
    if (v >= 0) return reduce(static_cast<u64>(v));
    const u64 r = reduce(static_cast<u64>(-(v + 1)) + 1);
    return neg(r);
  }

  /// Shoup precomputation floor(w * 2^64 / m) for a fixed multiplicand w < m.
  u64 shoup(u64 w) const noexcept { return static_cast<u64>((static_cast<u128>(w) << 64) / value_); }

  /// a * w mod m using a Shoup precomputed w_shoup; a may be any u64 below 2^63.
  u64 mul_shoup(u64 a, u64 w, u64 w_shoup) const noexcept {
    const u64 q = static_cast<u64>((static_cast<u128>(a) * w_shoup) >> 64);
    const u64 r = a * w - q * value_;
    return r >= value_ ? r - value_ : r;
  }

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.value_ == b.value_; }

 private:
  u64 value_ = 0;
  u64 ratio_lo_ = 0;
  u64 ratio_hi_ = 0;
};

}  // namespace modring
}  // namespace hyena
