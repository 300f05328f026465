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

#include <cstddef>
#include <vector>

#include "hyena/modring/number_theory.hpp"

namespace hyena::modring {

/// Twiddle tables for the negacyclic NTT of length n modulo a prime m = 1 (mod 2n).
///
/// Forward output index i holds the evaluation at psi^(2*brv(i)+1).
class NttTables {
 public:
  NttTables(std::size_t n, const Modulus& modulus)
      : n_(n), log_n_(log2_exact(n)), modulus_(modulus) {
    psi_ = minimal_primitive_root(2 * n, modulus.value());
    const u64 psi_inv = modulus.inverse(psi_);
    roots_.resize(n);
    roots_shoup_.resize(n);
    inv_roots_.resize(n);
    inv_roots_shoup_.resize(n);
    u64 pw = 1, ipw = 1;
    std::vector<u64> powers(n), inv_powers(n);
    for (std::size_t i = 0; i < n; ++i) {
      powers[i] = pw;
      inv_powers[i] = ipw;
      pw = modulus.mul(pw, psi_);
      ipw = modulus.mul(ipw, psi_inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = bit_reverse(i, log_n_);
      roots_[i] = powers[r];
      roots_shoup_[i] = modulus.shoup(roots_[i]);
      inv_roots_[i] = inv_powers[r];
      inv_roots_shoup_[i] = modulus.shoup(inv_roots_[i]);
    }
    n_inv_ = modulus.inverse(n);
    n_inv_shoup_ = modulus.shoup(n_inv_);
    exponents_.resize(n);
    for (std::size_t i = 0; i < n; ++i) exponents_[i] = 2 * bit_reverse(i, log_n_) + 1;
  }

  std::size_t n() const noexcept { return n_; }
  int log_n() const noexcept { return log_n_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  u64 psi() const noexcept { return psi_; }

  /// Odd exponent e such that evaluation slot i holds a(psi^e).
  u64 exponent(std::size_t i) const noexcept { return exponents_[i]; }

  void forward(u64* a) const noexcept {
    const Modulus& m = modulus_;
    std::size_t t = n_;
    for (std::size_t blocks = 1; blocks < n_; blocks <<= 1) {
      t >>= 1;
      for (std::size_t i = 0; i < blocks; ++i) {
        const u64 w = roots_[blocks + i];
        const u64 ws = roots_shoup_[blocks + i];
        u64* x = a + 2 * i * t;
        u64* y = x + t;
        for (std::size_t j = 0; j < t; ++j) {
          const u64 u = x[j];
          const u64 v = m.mul_shoup(y[j], w, ws);
          x[j] = m.add(u, v);
          y[j] = m.sub(u, v);
        }
      }
    }
  }

  void inverse(u64* a) const noexcept {
    const Modulus& m = modulus_;
    std::size_t t = 1;
    for (std::size_t blocks = n_ >> 1; blocks >= 1; blocks >>= 1) {
      for (std::size_t i = 0; i < blocks; ++i) {
        const u64 w = inv_roots_[blocks + i];
        const u64 ws = inv_roots_shoup_[blocks + i];
        u64* x = a + 2 * i * t;
        u64* y = x + t;
        for (std::size_t j = 0; j < t; ++j) {
          const u64 u = x[j];
          const u64 v = y[j];
          x[j] = m.add(u, v);
          y[j] = m.mul_shoup(m.sub(u, v), w, ws);
        }
      }
      t <<= 1;
    }
    for (std::size_t j = 0; j < n_; ++j) a[j] = m.mul_shoup(a[j], n_inv_, n_inv_shoup_);
  }

 private:
  std::size_t n_;
  int log_n_;
  Modulus modulus_;
  u64 psi_ = 0;
  std::vector<u64> roots_, roots_shoup_, inv_roots_, inv_roots_shoup_, exponents_;
  u64 n_inv_ = 0, n_inv_shoup_ = 0;
};

}  // namespace hyena::modring
