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
#include <string>
#include <vector>

#include "hyena/bfv/encoder.hpp"
#include "hyena/bfv/galois.hpp"
#include "hyena/bfv/op_counts.hpp"
#include "hyena/errors.hpp"

namespace hyena::bfv {

/// A ciphertext with c1 already split into NTT-form digits, ready for many rotations.
struct DecomposedCiphertext {
  Polynomial c0;
  std::vector<Polynomial> digits;
  int base_bits = 0;
  u64 scale_tag = 1;
};

class Evaluator {
 public:
  explicit Evaluator(const RingParams& params, OpCounts* counts = nullptr) : params_(params), counts_(counts) {}

  const RingParams& params() const noexcept { return params_; }
  OpCounts* counts() const noexcept { return counts_; }
  void set_counts(OpCounts* counts) noexcept { counts_ = counts; }

  Ciphertext to_eval(Ciphertext ct) const {
    if (ct.c0.domain == Domain::coefficient) ct.c0 = modring::ntt_forward(std::move(ct.c0), *params_.ntt_q);
    if (ct.c1.domain == Domain::coefficient) ct.c1 = modring::ntt_forward(std::move(ct.c1), *params_.ntt_q);
    return ct;
  }

  Ciphertext to_coeff(Ciphertext ct) const {
    if (ct.c0.domain == Domain::evaluation) ct.c0 = modring::ntt_inverse(std::move(ct.c0), *params_.ntt_q);
    if (ct.c1.domain == Domain::evaluation) ct.c1 = modring::ntt_inverse(std::move(ct.c1), *params_.ntt_q);
    return ct;
  }

  Ciphertext hadd(const Ciphertext& a, const Ciphertext& b) const {
    Ciphertext r = a;
    hadd_inplace(r, b);
    return r;
  }

  void hadd_inplace(Ciphertext& a, const Ciphertext& b) const {
    if (params_.p.reduce(a.scale_tag) != params_.p.reduce(b.scale_tag)) {
      throw ScaleMismatch("hadd: scale tags " + std::to_string(a.scale_tag) + " and " + std::to_string(b.scale_tag));
    }
    if (a.domain() != b.domain()) {
      const Ciphertext bb = a.domain() == Domain::evaluation ? to_eval(b) : to_coeff(b);
      add_parts(a, bb);
    } else {
      add_parts(a, b);
    }
    if (counts_) ++counts_->hadds;
  }

  Ciphertext negate(const Ciphertext& a) const {
    return Ciphertext{modring::negate(a.c0), modring::negate(a.c1), a.scale_tag};
  }

  /// Slotwise product with a prepared plaintext; the result is in evaluation form.
  Ciphertext pmult(const Ciphertext& a, const PreparedPlaintext& w) const {
    const Ciphertext e = to_eval(a);
    if (counts_) ++counts_->pmults;
    return Ciphertext{modring::pointwise_mul(e.c0, w.eval), modring::pointwise_mul(e.c1, w.eval), a.scale_tag};
  }

  /// Product with a sparse plaintext given as signed monomials; coefficient form in and out.
  Ciphertext pmult_sparse(const Ciphertext& a, const std::vector<modring::SparseTerm>& terms) const {
    const Ciphertext c = to_coeff(a);
    if (counts_) ++counts_->pmults;
    return Ciphertext{modring::sparse_mul(c.c0, terms), modring::sparse_mul(c.c1, terms), a.scale_tag};
  }

  /// Multiplies every slot by s in [0, p); uses the centered representative of s.
  Ciphertext cmult(const Ciphertext& a, u64 s) const {
    const u64 sq = params_.q.from_signed(params_.p.centered(params_.p.reduce(s)));
    if (counts_) ++counts_->cmults;
    return Ciphertext{modring::scalar_mul(a.c0, sq, params_.q), modring::scalar_mul(a.c1, sq, params_.q), a.scale_tag};
  }

  /// Signed base-2^W digits of c1 in NTT form, computed once per ciphertext.
  DecomposedCiphertext hoist_decompose(const Ciphertext& a, int base_bits) const {
    const auto& t = *params_.ntt_q;
    DecomposedCiphertext d;
    d.base_bits = base_bits;
    d.scale_tag = a.scale_tag;
    d.c0 = a.c0.domain == Domain::evaluation ? a.c0 : modring::ntt_forward(a.c0, t);
    const Polynomial c1 = a.c1.domain == Domain::coefficient ? a.c1 : modring::ntt_inverse(a.c1, t);
    d.digits = decompose(c1, base_bits, digit_count(params_.q_bits(), base_bits));
    for (auto& digit : d.digits) digit = modring::ntt_forward(std::move(digit), t);
    if (counts_) ++counts_->decompositions;
    return d;
  }

  /// Applies Galois element g to a hoisted ciphertext; output in evaluation form.
  Ciphertext hoisted_apply(const DecomposedCiphertext& d, u64 g, const GaloisKeySet& keys) const {
    if (g == 1) return identity_from(d);
    check_base(d.base_bits, keys);
    const auto& perm = keys.permutation(g);
    const auto& key = keys.key(g);
    Ciphertext out = key_switch(d.digits, &perm, key);
    const auto& q = params_.q;
    for (std::size_t j = 0; j < params_.n; ++j) out.c0[j] = q.add(out.c0[j], d.c0[perm[j]]);
    out.scale_tag = d.scale_tag;
    if (counts_) ++counts_->rotations;
    return out;
  }

  Ciphertext hoisted_rot(const DecomposedCiphertext& d, long step, const GaloisKeySet& keys) const {
    return hoisted_apply(d, rotation_element(params_.n, step), keys);
  }

  /// Applies Galois element g with its own decomposition; output in evaluation form.
  Ciphertext apply_galois(const Ciphertext& a, u64 g, const GaloisKeySet& keys) const {
    if (g == 1) return to_eval(a);
    const auto& t = *params_.ntt_q;
    const auto& key = keys.key(g);
    const Polynomial c0 = a.c0.domain == Domain::coefficient ? a.c0 : modring::ntt_inverse(a.c0, t);
    const Polynomial c1 = a.c1.domain == Domain::coefficient ? a.c1 : modring::ntt_inverse(a.c1, t);
    auto digits = decompose(automorphism_coeff(c1, g), keys.base_bits(), keys.digits());
    for (auto& digit : digits) digit = modring::ntt_forward(std::move(digit), t);
    if (counts_) ++counts_->decompositions;
    Ciphertext out = key_switch(digits, nullptr, key);
    modring::add_inplace(out.c0, modring::ntt_forward(automorphism_coeff(c0, g), t), params_.q);
    out.scale_tag = a.scale_tag;
    if (counts_) ++counts_->rotations;
    return out;
  }

  /// Rotates both slot rows left by `step` columns.
  Ciphertext hrot(const Ciphertext& a, long step, const GaloisKeySet& keys) const {
    return apply_galois(a, rotation_element(params_.n, step), keys);
  }

  Ciphertext row_swap(const Ciphertext& a, const GaloisKeySet& keys) const {
    return apply_galois(a, row_swap_element(params_.n), keys);
  }

 private:
  void add_parts(Ciphertext& a, const Ciphertext& b) const {
    modring::add_inplace(a.c0, b.c0, params_.q);
    modring::add_inplace(a.c1, b.c1, params_.q);
  }

  void check_base(int base_bits, const GaloisKeySet& keys) const {
    if (base_bits != keys.base_bits()) throw std::invalid_argument("decomposition base does not match the key set");
  }

  Ciphertext identity_from(const DecomposedCiphertext& d) const {
    const Modulus& q = params_.q;
    // Recombine the digits: c1 = sum_i 2^(iW) d_i.
    Polynomial c1(params_.n, q.value(), Domain::evaluation);
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
      const u64 g = q.pow(2, static_cast<u64>(i) * d.base_bits);
      modring::add_inplace(c1, modring::scalar_mul(d.digits[i], g, q), q);
    }
    return Ciphertext{d.c0, std::move(c1), d.scale_tag};
  }

  Ciphertext key_switch(const std::vector<Polynomial>& digits, const std::vector<std::uint32_t>* perm,
                        const std::vector<KeyPair>& key) const {
    const std::size_t n = params_.n;
    const Modulus& q = params_.q;
    Polynomial c0(n, q.value(), Domain::evaluation), c1(n, q.value(), Domain::evaluation);
    const std::size_t l = digits.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t src = perm ? (*perm)[j] : j;
      u128 acc0 = 0, acc1 = 0;
      for (std::size_t i = 0; i < l; ++i) {
        const u64 d = digits[i][src];
        acc0 += static_cast<u128>(d) * key[i].b[j];
        acc1 += static_cast<u128>(d) * key[i].a[j];
      }
      c0[j] = q.reduce(acc0);
      c1[j] = q.reduce(acc1);
    }
    return Ciphertext{std::move(c0), std::move(c1), 1};
  }

  RingParams params_;
  OpCounts* counts_;
};

}  // namespace hyena::bfv
