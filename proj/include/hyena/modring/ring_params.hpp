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
#include <memory>
#include <stdexcept>
#include <string>

#include "hyena/modring/ntt.hpp"

namespace hyena::modring {

/// Ring degree, plaintext and ciphertext moduli, and their NTT tables.
struct RingParams {
  std::size_t n = 0;
  Modulus p;
  Modulus q;
  u64 delta = 0;
  std::shared_ptr<const NttTables> ntt_q;
  std::shared_ptr<const NttTables> ntt_p;

  RingParams() = default;

  RingParams(std::size_t degree, u64 plain_modulus, u64 cipher_modulus)
      : n(degree), p(plain_modulus), q(cipher_modulus) {
    if (!is_power_of_two(n) || n < 2) throw std::invalid_argument("ring degree must be a power of two");
    if (!is_prime(plain_modulus) || !is_prime(cipher_modulus)) throw std::invalid_argument("moduli must be prime");
    if (plain_modulus >= cipher_modulus) throw std::invalid_argument("q must exceed p");
    if (std::bit_width(cipher_modulus) > 60 || std::bit_width(plain_modulus) > 20) {
      throw std::invalid_argument("q is limited to 60 bits and p to 20 bits");
    }
    if ((plain_modulus - 1) % (2 * n) != 0 || (cipher_modulus - 1) % (2 * n) != 0) {
      throw std::invalid_argument("p and q must be 1 mod 2n");
    }
    delta = cipher_modulus / plain_modulus;
    ntt_q = std::make_shared<const NttTables>(n, q);
    ntt_p = std::make_shared<const NttTables>(n, p);
  }

  int q_bits() const noexcept { return q.bit_count(); }
  int p_bits() const noexcept { return p.bit_count(); }

  std::string describe() const {
    return "n=" + std::to_string(n) + " p=" + std::to_string(p.value()) + " q=" + std::to_string(q.value());
  }
};

}  // namespace hyena::modring
