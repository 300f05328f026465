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

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "hyena/bfv/encoder.hpp"
#include "hyena/bfv/keys.hpp"
#include "hyena/errors.hpp"

namespace hyena::bfv {

/// Symmetric encryption with an explicit seeded randomness stream.
class Encryptor {
 public:
  Encryptor(const RingParams& params, const SecretKey& sk, u64 seed) : params_(params), sk_(sk), rng_(seed) {}

  /// c0 = delta*m + a*s + e, c1 = -a.
  Ciphertext encrypt(const Plaintext& pt) {
    const auto& q = params_.q;
    const auto a = sample_uniform(params_, rng_, Domain::evaluation);
    auto as = modring::ntt_inverse(modring::pointwise_mul(a, sk_.s_ntt()), *params_.ntt_q);
    auto c0 = sample_error(params_, rng_);
    for (std::size_t i = 0; i < params_.n; ++i) {
      const u64 dm = q.mul(params_.delta, pt.poly[i]);
      c0[i] = q.add(q.add(c0[i], as[i]), dm);
    }
    auto c1 = modring::ntt_inverse(modring::negate(a), *params_.ntt_q);
    return Ciphertext{std::move(c0), std::move(c1), 1};
  }

  Ciphertext encrypt_zero() { return encrypt(Plaintext{Polynomial(params_.n, params_.p.value())}); }

  std::mt19937_64& rng() noexcept { return rng_; }

 private:
  RingParams params_;
  const SecretKey& sk_;
  std::mt19937_64 rng_;
};

/// Decryption and the ground-truth noise meter.
class Decryptor {
 public:
  Decryptor(const RingParams& params, const SecretKey& sk) : params_(params), sk_(sk) {}

  /// c0 + c1*s in coefficient form.
  Polynomial phase(const Ciphertext& ct) const {
    const auto& t = *params_.ntt_q;
    Polynomial c1 = ct.c1.domain == Domain::evaluation ? ct.c1 : modring::ntt_forward(ct.c1, t);
    Polynomial v = modring::pointwise_mul(c1, sk_.s_ntt());
    if (ct.c0.domain == Domain::evaluation) {
      modring::add_inplace(v, ct.c0, params_.q);
      return modring::ntt_inverse(std::move(v), t);
    }
    v = modring::ntt_inverse(std::move(v), t);
    modring::add_inplace(v, ct.c0, params_.q);
    return v;
  }

  /// Raw plaintext round(p * phase / q) mod p; still multiplied by the scale tag.
  Plaintext decrypt(const Ciphertext& ct) const {
    const auto v = phase(ct);
    const u64 p = params_.p.value(), q = params_.q.value();
    Polynomial m(params_.n, p);
    for (std::size_t i = 0; i < params_.n; ++i) {
      const u128 num = static_cast<u128>(v[i]) * p + q / 2;
      m[i] = static_cast<u64>(num / q) % p;
    }
    return Plaintext{std::move(m)};
  }

  /// log2 of the infinity norm of phase - delta*[expected*scale]_p, or -inf if exact.
  double noise_bits(const Ciphertext& ct, const Plaintext& expected) const {
    const auto v = phase(ct);
    const auto& q = params_.q;
    const u64 scale = params_.p.reduce(ct.scale_tag);
    u64 worst = 0;
    for (std::size_t i = 0; i < params_.n; ++i) {
      const u64 m = params_.p.mul(expected.poly[i], scale);
      const i64 r = q.centered(q.sub(v[i], q.mul(params_.delta, m)));
      worst = std::max<u64>(worst, static_cast<u64>(r < 0 ? -r : r));
    }
    return worst == 0 ? -std::numeric_limits<double>::infinity() : std::log2(static_cast<double>(worst));
  }

  /// Noise of the decrypted message itself, without knowing the expected value.
  double apparent_noise_bits(const Ciphertext& ct) const {
    const auto v = phase(ct);
    const auto pt = decrypt(ct);
    const auto& q = params_.q;
    u64 worst = 0;
    for (std::size_t i = 0; i < params_.n; ++i) {
      const i64 r = q.centered(q.sub(v[i], q.mul(params_.delta, pt.poly[i])));
      worst = std::max<u64>(worst, static_cast<u64>(r < 0 ? -r : r));
    }
    return worst == 0 ? -std::numeric_limits<double>::infinity() : std::log2(static_cast<double>(worst));
  }

  /// Bits available before decryption fails: log2(delta / 2).
  double margin_bits() const { return std::log2(static_cast<double>(params_.delta) / 2.0); }

  /// Decrypts, throwing when the measured noise has reached the rounding margin.
  Plaintext decrypt_checked(const Ciphertext& ct, const Plaintext& expected) const {
    if (noise_bits(ct, expected) >= margin_bits()) throw DecryptionFailure("noise exceeds decryption margin");
    return decrypt(ct);
  }

 private:
  RingParams params_;
  const SecretKey& sk_;
};

}  // namespace hyena::bfv
