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
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyena/bfv/encoder.hpp"
#include "hyena/modring/ntt.hpp"

namespace hyena::params {


inline constexpr u64 kDefaultKMax = 16;

struct PrimePair {
  u64 p = 0;
  u64 q = 0;
};

/// Smallest p_bits-bit prime p with (p-1)/2n odd, and smallest q_bits-bit prime q = 1 (mod 2n*p).
inline PrimePair find_primes(std::size_t n, int p_bits, int q_bits) {
  if (!modring::is_power_of_two(n)) throw std::invalid_argument("n must be a power of two");
  if (p_bits < 2 || q_bits > 60 || p_bits > 20 || p_bits >= q_bits) throw std::invalid_argument("invalid modulus widths");
  const u64 two_n = 2 * n;
  PrimePair r;
  const u64 p_lo = u64{1} << (p_bits - 1), p_hi = u64{1} << p_bits;
  u64 p = (p_lo / (2 * two_n)) * (2 * two_n) + two_n + 1;
  for (; p < p_hi; p += 2 * two_n) {
    if (p >= p_lo && modring::is_prime(p)) {
      r.p = p;
      break;
    }
  }
  if (r.p == 0) throw std::invalid_argument("no plaintext prime of " + std::to_string(p_bits) + " bits for n=" + std::to_string(n));
  const u64 step = two_n * r.p;
  const u64 q_lo = u64{1} << (q_bits - 1), q_hi = u64{1} << q_bits;
  for (u64 q = (q_lo / step) * step + 1; q < q_hi; q += step) {
    if (q >= q_lo && modring::is_prime(q)) {
      r.q = q;
      return r;
    }
  }
  throw std::invalid_argument("no ciphertext prime of " + std::to_string(q_bits) + " bits");
}

/// Plaintext polynomial whose row-0 slots are a and row-1 slots are b (signed, mod p).
inline modring::Polynomial encode_row_pattern(u64 p, std::size_t n, i64 a, i64 b) {
  const modring::Modulus mod(p);
  const modring::NttTables t(n, mod);
  const auto map = bfv::slot_index_map(t);
  modring::Polynomial eval(n, p, modring::Domain::evaluation);
  for (std::size_t s = 0; s < n; ++s) eval[map[s]] = mod.from_signed(s < n / 2 ? a : b);
  return modring::ntt_inverse(std::move(eval), t);
}

/// Magnitude of the nonzero coefficient of the [+1 | -1] row pattern; nullopt when the pattern is constant.
inline std::optional<u64> compute_h(u64 p, std::size_t n, i64 row0 = 1, i64 row1 = -1) {
  const auto poly = encode_row_pattern(p, n, row0, row1);
  std::size_t nonzero = 0;
  u64 value = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (poly[i] != 0) {
      ++nonzero;
      const u64 mag = std::min(poly[i], p - poly[i]);
      if (value != 0 && mag != value) throw std::logic_error("pattern coefficients differ in magnitude");
      value = mag;
    }
  }
  if (nonzero > 2 || (nonzero > 0 && poly[0] != 0)) throw std::logic_error("row pattern is not 2-sparse");
  if (nonzero == 0) return std::nullopt;
  return value;
}

struct KChoice {
  u64 k = 1;
  i64 residue = 0;
};

/// k in [1, k_max] minimising |centered(k*h mod p)|, ties to the smaller k.
inline KChoice find_k(u64 p, u64 h, u64 k_max = kDefaultKMax) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  const modring::Modulus mod(p);
  KChoice best{0, 0};
  u64 best_mag = ~u64{0};
  for (u64 k = 1; k <= k_max; ++k) {
    const i64 r = mod.centered(mod.mul(k % p, h % p));
    const u64 mag = static_cast<u64>(std::llabs(r));
    if (mag < best_mag) {
      best_mag = mag;
      best = KChoice{k, r};
    }
  }
  return best;
}

/// Worst-case noise growth bits of the sign-plaintext path: |s1|*2*|residue| + |s0|.
inline double forecast_sign_pmult_bits(i64 residue, u64 s0_max, u64 s1_max) {
  return std::log2(static_cast<double>(s1_max) * 2.0 * static_cast<double>(std::llabs(residue)) + static_cast<double>(s0_max));
}

/// Worst-case growth of a product with a dense plaintext: n*p/2.
inline double forecast_dense_pmult_bits(std::size_t n, u64 p) { return std::log2(static_cast<double>(n) * static_cast<double>(p) / 2.0); }

struct ParamSearchResult {
  std::size_t n = 0;
  u64 p = 0;
  u64 q = 0;
  u64 h = 0;
  u64 k = 1;
  i64 residue = 0;
  double forecast_dense_bits = 0;
  double forecast_sign_k1_bits = 0;
  double forecast_sign_bits = 0;
};

/// The full selection procedure: primes, sign coefficient h, multiplier k.
inline ParamSearchResult search(std::size_t n, int p_bits, int q_bits, u64 k_max = kDefaultKMax, u64 weight_max = 255) {
  ParamSearchResult r;
  r.n = n;
  const auto primes = find_primes(n, p_bits, q_bits);
  r.p = primes.p;
  r.q = primes.q;
  const auto h = compute_h(r.p, n);
  if (!h) throw std::logic_error("sign pattern encodes to a constant");
  r.h = *h;
  const auto kc = find_k(r.p, r.h, k_max);
  r.k = kc.k;
  r.residue = kc.residue;
  const modring::Modulus mod(r.p);
  r.forecast_dense_bits = forecast_dense_pmult_bits(n, r.p);
  r.forecast_sign_k1_bits = forecast_sign_pmult_bits(mod.centered(r.h), 2 * weight_max, weight_max);
  r.forecast_sign_bits = forecast_sign_pmult_bits(r.residue, 2 * weight_max * r.k, weight_max);
  return r;
}

}  // namespace hyena::params
