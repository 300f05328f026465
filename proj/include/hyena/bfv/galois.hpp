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
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyena/bfv/encoder.hpp"
#include "hyena/bfv/keys.hpp"
#include "hyena/errors.hpp"

namespace hyena::bfv {

/// Galois element 3^step mod 2n; negative steps rotate right.
inline u64 rotation_element(std::size_t n, long step) {
  const long half = static_cast<long>(n / 2);
  long s = step % half;
  if (s < 0) s += half;
  return modring::powmod(3, static_cast<u64>(s), 2 * n);
}

/// Galois element that exchanges the two slot rows.
inline u64 row_swap_element(std::size_t n) { return 2 * n - 1; }

inline u64 compose_elements(std::size_t n, u64 a, u64 b) { return a * b % (2 * n); }

/// x -> x^g on a coefficient-form polynomial.
inline Polynomial automorphism_coeff(const Polynomial& a, u64 g) {
  modring::require_domain(a, Domain::coefficient, "automorphism");
  const std::size_t n = a.size();
  const u64 two_n = 2 * n;
  const Modulus m(a.modulus);
  Polynomial r(n, a.modulus, Domain::coefficient);
  for (std::size_t i = 0; i < n; ++i) {
    const u64 j = static_cast<u64>(i) * g % two_n;
    if (j < n) r[j] = a[i];
    else r[j - n] = m.neg(a[i]);
  }
  return r;
}

/// Evaluation-domain index permutation realising x -> x^g: out[i] = in[perm[i]].
inline std::vector<std::uint32_t> automorphism_permutation(const modring::NttTables& t, u64 g) {
  const std::size_t n = t.n();
  std::vector<std::uint32_t> index_of_exponent(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) index_of_exponent[t.exponent(i)] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = index_of_exponent[t.exponent(i) * g % (2 * n)];
  return perm;
}

inline Polynomial permute(const Polynomial& a, const std::vector<std::uint32_t>& perm) {
  Polynomial r(a.size(), a.modulus, a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[perm[i]];
  return r;
}

inline int digit_count(int q_bits, int base_bits) { return (q_bits + base_bits - 1) / base_bits; }

/// Balanced signed base-2^W digits of the centered coefficients of a.
///
/// Digits of -c are exactly the negated digits of c, so the decomposition commutes with automorphisms.
inline std::vector<Polynomial> decompose(const Polynomial& a, int base_bits, int digits) {
  modring::require_domain(a, Domain::coefficient, "decompose");
  const Modulus q(a.modulus);
  const std::size_t n = a.size();
  std::vector<Polynomial> out(digits, Polynomial(n, a.modulus));
  const i64 base = i64{1} << base_bits;
  const i64 half = base >> 1;
  for (std::size_t j = 0; j < n; ++j) {
    const i64 c = q.centered(a[j]);
    const bool negative = c < 0;
    i64 v = negative ? -c : c;
    for (int i = 0; i < digits; ++i) {
      i64 d;
      if (i + 1 == digits) {
        d = v;
      } else {
        d = v & (base - 1);
        if (d >= half) d -= base;
        v = (v - d) >> base_bits;
      }
      out[i][j] = q.from_signed(negative ? -d : d);
    }
  }
  return out;
}

/// Switching key digit i for element g: (-a*s + e + 2^(iW)*g(s), a), both in NTT form.
struct KeyPair {
  Polynomial b;
  Polynomial a;
};

/// Rotation keys for a declared set of Galois elements at one decomposition base.
class GaloisKeySet {
 public:
  GaloisKeySet() = default;
  GaloisKeySet(const RingParams& params, int base_bits)
      : n_(params.n), q_(params.q.value()), base_bits_(base_bits), digits_(digit_count(params.q_bits(), base_bits)) {
    if (base_bits < 1 || base_bits > params.q_bits()) throw std::invalid_argument("decomposition base out of range");
  }

  std::size_t n() const noexcept { return n_; }
  u64 q() const noexcept { return q_; }
  int base_bits() const noexcept { return base_bits_; }
  int digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  bool contains(u64 g) const { return keys_.count(g) != 0; }

  std::vector<u64> elements() const {
    std::vector<u64> v;
    for (const auto& [g, _] : keys_) v.push_back(g);
    return v;
  }

  const std::vector<KeyPair>& key(u64 g) const {
    auto it = keys_.find(g);
    if (it == keys_.end()) throw KeyError("no switching key for galois element " + std::to_string(g));
    return it->second;
  }

  const std::vector<std::uint32_t>& permutation(u64 g) const {
    auto it = perms_.find(g);
    if (it == perms_.end()) throw KeyError("no switching key for galois element " + std::to_string(g));
    return it->second;
  }

  /// Raw key material: 2 * n * 8 bytes per digit per element.
  std::size_t payload_bytes() const noexcept { return keys_.size() * 2 * n_ * 8 * static_cast<std::size_t>(digits_); }

  void insert(u64 g, std::vector<KeyPair> pairs, const modring::NttTables& t) {
    if (pairs.size() != static_cast<std::size_t>(digits_)) throw std::invalid_argument("wrong number of key digits");
    keys_[g] = std::move(pairs);
    perms_[g] = automorphism_permutation(t, g);
  }

 private:
  std::size_t n_ = 0;
  u64 q_ = 0;
  int base_bits_ = 0;
  int digits_ = 0;
  std::map<u64, std::vector<KeyPair>> keys_;
  std::map<u64, std::vector<std::uint32_t>> perms_;
};

inline GaloisKeySet galois_keygen(const RingParams& params, const SecretKey& sk, const std::set<u64>& elements,
                                  int base_bits, u64 seed) {
  GaloisKeySet keys(params, base_bits);
  std::mt19937_64 rng(seed);
  const auto& t = *params.ntt_q;
  const auto& q = params.q;
  for (u64 g : elements) {
    if (g % 2 == 0 || g >= 2 * params.n) throw std::invalid_argument("invalid galois element");
    const auto gs = modring::ntt_forward(automorphism_coeff(sk.s(), g), t);
    std::vector<KeyPair> pairs;
    for (int i = 0; i < keys.digits(); ++i) {
      auto a = sample_uniform(params, rng, Domain::evaluation);
      auto b = modring::ntt_forward(sample_error(params, rng), t);
      const u64 gadget = q.pow(2, static_cast<u64>(i) * base_bits);
      for (std::size_t j = 0; j < params.n; ++j) {
        const u64 as = q.mul(a[j], sk.s_ntt()[j]);
        b[j] = q.add(q.sub(b[j], as), q.mul(gadget, gs[j]));
      }
      pairs.push_back(KeyPair{std::move(b), std::move(a)});
    }
    keys.insert(g, std::move(pairs), t);
  }
  return keys;
}

/// Rotation-step convenience wrapper; `row_swap` adds the row-exchange element.
inline std::set<u64> elements_for_steps(std::size_t n, const std::vector<long>& steps, bool row_swap = false) {
  std::set<u64> out;
  for (long s : steps)
    if (rotation_element(n, s) != 1) out.insert(rotation_element(n, s));
  if (row_swap) out.insert(row_swap_element(n));
  return out;
}

}  // namespace hyena::bfv
