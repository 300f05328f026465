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
#include <random>
#include <stdexcept>
#include <vector>

#include "hyena/modring/poly_ops.hpp"
#include "hyena/modring/ring_params.hpp"

namespace hyena::bfv {

using modring::Domain;
using modring::Modulus;
using modring::Polynomial;
using modring::RingParams;

inline constexpr double kErrorStdDev = 3.19;
inline constexpr double kErrorBound = 6.0 * kErrorStdDev;

inline Polynomial sample_uniform(const RingParams& params, std::mt19937_64& rng, Domain domain = Domain::coefficient) {
  std::uniform_int_distribution<u64> dist(0, params.q.value() - 1);
  Polynomial a(params.n, params.q.value(), domain);
  for (auto& c : a.coeffs) c = dist(rng);
  return a;
}

/// Rounded Gaussian with the tails beyond six standard deviations resampled.
inline Polynomial sample_error(const RingParams& params, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, kErrorStdDev);
  Polynomial e(params.n, params.q.value());
  for (auto& c : e.coeffs) {
    double v;
    do {
      v = std::round(dist(rng));
    } while (std::fabs(v) > kErrorBound);
    c = params.q.from_signed(static_cast<i64>(v));
  }
  return e;
}

/// Binary secret s in {0,1}^n, kept in both coefficient and NTT form.
class SecretKey {
 public:
  SecretKey(const RingParams& params, std::vector<u64> bits, u64 seed) : seed_(seed) {
    if (bits.size() != params.n) throw std::invalid_argument("secret key length must be n");
    for (u64 b : bits)
      if (b > 1) throw std::invalid_argument("secret key coefficients must be binary");
    s_ = Polynomial(std::move(bits), params.q.value());
    s_ntt_ = modring::ntt_forward(s_, *params.ntt_q);
  }

  /// Test hook: a key with chosen coefficients.
  static SecretKey from_coefficients(const RingParams& params, std::vector<u64> bits) {
    return SecretKey(params, std::move(bits), 0);
  }

  const Polynomial& s() const noexcept { return s_; }
  const Polynomial& s_ntt() const noexcept { return s_ntt_; }
  u64 seed() const noexcept { return seed_; }

 private:
  Polynomial s_;
  Polynomial s_ntt_;
  u64 seed_;
};

inline SecretKey keygen(const RingParams& params, u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<u64> bits(params.n);
  for (auto& b : bits) b = rng() & 1;
  return SecretKey(params, std::move(bits), seed);
}

}  // namespace hyena::bfv
