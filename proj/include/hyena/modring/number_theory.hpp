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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "hyena/modring/modulus.hpp"

namespace hyena::modring {

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(u64 v) {
  if (!is_power_of_two(v)) throw std::invalid_argument("value is not a power of two");
  return std::countr_zero(v);
}

inline u64 bit_reverse(u64 v, int bits) {
  u64 r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r;
}

/// Smallest primitive 2n-th root of unity modulo prime m (requires m = 1 mod 2n).
inline u64 minimal_primitive_root(u64 two_n, u64 m) {
  if (!is_power_of_two(two_n) || two_n < 2) throw std::invalid_argument("order must be a power of two");
  if ((m - 1) % two_n != 0) throw std::invalid_argument("modulus has no root of the requested order");
  const u64 half = two_n / 2;
  u64 root = 0;
  for (u64 g = 2; g < m; ++g) {
    const u64 c = powmod(g, (m - 1) / two_n, m);
    if (powmod(c, half, m) == m - 1) {
      root = c;
      break;
    }
  }
  if (root == 0) throw std::invalid_argument("no primitive root found");
  // Every primitive root is an odd power of any other one.
  const u64 sq = mulmod(root, root, m);
  u64 best = root, cur = root;
  for (u64 i = 1; i < half; ++i) {
    cur = mulmod(cur, sq, m);
    best = std::min(best, cur);
  }
  return best;
}

}  // namespace hyena::modring
