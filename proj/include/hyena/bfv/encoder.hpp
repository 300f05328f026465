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
#include <stdexcept>
#include <vector>

#include "hyena/modring/poly_ops.hpp"
#include "hyena/modring/ring_params.hpp"

namespace hyena::bfv {

using modring::Domain;
using modring::Polynomial;
using modring::RingParams;

/// Message polynomial mod p in coefficient form.
struct Plaintext {
  Polynomial poly;

  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

/// Pair of mod-q polynomials; the logical message is scale_tag times the encoded one.
struct Ciphertext {
  Polynomial c0;
  Polynomial c1;
  u64 scale_tag = 1;

  Domain domain() const noexcept { return c0.domain; }
  std::size_t n() const noexcept { return c0.size(); }

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// A plaintext lifted to Z_q with centered coefficients and kept in NTT form.
struct PreparedPlaintext {
  Polynomial eval;
};

/// NTT index holding each slot; row 0 column c is psi^(3^c), row 1 column c is psi^(-3^c).
inline std::vector<std::size_t> slot_index_map(const modring::NttTables& t) {
  const std::size_t n = t.n();
  const u64 two_n = 2 * n;
  std::vector<std::size_t> index_of_exponent(two_n, 0);
  for (std::size_t i = 0; i < n; ++i) index_of_exponent[t.exponent(i)] = i;
  std::vector<std::size_t> map(n);
  u64 e = 1;
  for (std::size_t c = 0; c < n / 2; ++c) {
    map[c] = index_of_exponent[e];
    map[n / 2 + c] = index_of_exponent[two_n - e];
    e = e * 3 % two_n;
  }
  return map;
}

/// Maps a 2 x (n/2) slot matrix onto plaintext polynomials mod p.
class BatchEncoder {
 public:
  explicit BatchEncoder(const RingParams& params)
      : params_(params), slot_to_index_(slot_index_map(*params.ntt_p)) {}

  std::size_t slot_count() const noexcept { return params_.n; }
  std::size_t row_size() const noexcept { return params_.n / 2; }
  const RingParams& params() const noexcept { return params_; }

  Plaintext encode(const std::vector<u64>& slots) const {
    if (slots.size() != params_.n) throw std::invalid_argument("encode: expected n slot values");
    Polynomial eval(params_.n, params_.p.value(), Domain::evaluation);
    for (std::size_t s = 0; s < params_.n; ++s) eval[slot_to_index_[s]] = params_.p.reduce(slots[s]);
    return Plaintext{modring::ntt_inverse(std::move(eval), *params_.ntt_p)};
  }

  std::vector<u64> decode(const Plaintext& pt) const {
    const auto eval = modring::ntt_forward(pt.poly, *params_.ntt_p);
    std::vector<u64> slots(params_.n);
    for (std::size_t s = 0; s < params_.n; ++s) slots[s] = eval[slot_to_index_[s]];
    return slots;
  }

  /// Centered lift of a plaintext into Z_q, transformed to evaluation form.
  PreparedPlaintext prepare(const Plaintext& pt) const {
    Polynomial lifted(params_.n, params_.q.value());
    for (std::size_t i = 0; i < params_.n; ++i) lifted[i] = params_.q.from_signed(params_.p.centered(pt.poly[i]));
    return PreparedPlaintext{modring::ntt_forward(std::move(lifted), *params_.ntt_q)};
  }

 private:
  RingParams params_;
  std::vector<std::size_t> slot_to_index_;
};

}  // namespace hyena::bfv
