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
#include <random>
#include <vector>

#include "hyena/conv/hadamard.hpp"
#include "hyena/harness/verify.hpp"

namespace hyena::harness {

struct NoiseGrowth {
  std::vector<double> dense;
  std::vector<double> sign_unit;
  std::vector<double> sign_k;
  u64 k = 1;

  static double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0 : s / static_cast<double>(v.size());
  }
  static double max(const std::vector<double>& v) {
    double m = -1e300;
    for (double x : v) m = std::max(m, x);
    return m;
  }
};

/// Growth in bits over a fresh ciphertext for a dense kernel PMult and for the two-channel
/// CMult(s0) + PMult(CMult(s1), sign) combination with multipliers 1 and k.
inline NoiseGrowth measure_noise_growth(const Session& s, std::size_t trials, u64 k, u64 seed, u64 weight_bound = 256) {
  const auto& rp = s.rp;
  const conv::Layout lay(rp.n, rp.n / 2, 1);
  const auto sign1 = conv::make_sign_plaintext(lay, 1, 1, s.encoder);
  const auto signk = conv::make_sign_plaintext(lay, 1, k, s.encoder);
  bfv::Evaluator ev(rp);
  std::mt19937_64 rng(seed);
  NoiseGrowth g;
  g.k = k;
  const auto& p = rp.p;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<u64> u(rp.n), w(rp.n);
    for (auto& x : u) x = rng() % p.value();
    for (auto& x : w) x = rng() % weight_bound;
    const auto pu = s.encoder.encode(u);
    bfv::Encryptor enc(rp, s.sk, rng());
    const auto ct = enc.encrypt(pu);
    const double fresh = s.decryptor.noise_bits(ct, pu);

    std::vector<u64> expect(rp.n);
    for (std::size_t j = 0; j < rp.n; ++j) expect[j] = p.mul(u[j], w[j]);
    const auto dense = ev.pmult(ct, s.encoder.prepare(s.encoder.encode(w)));
    g.dense.push_back(s.decryptor.noise_bits(dense, s.encoder.encode(expect)) - fresh);

    const u64 f0 = rng() % weight_bound, f1 = rng() % weight_bound;
    auto combined = [&](u64 mult, const conv::SignPlaintext& sign) {
      const u64 s0 = p.mul(mult, f0 + f1), s1 = p.sub(f0, f1);
      const auto out = ev.hadd(ev.to_eval(ev.cmult(ct, s0)), ev.pmult(ev.cmult(ct, s1), sign.prepared));
      for (std::size_t j = 0; j < rp.n; ++j) expect[j] = p.mul(p.mul(2 * mult, j < rp.n / 2 ? f0 : f1), u[j]);
      return s.decryptor.noise_bits(out, s.encoder.encode(expect)) - fresh;
    };
    g.sign_unit.push_back(combined(1, sign1));
    g.sign_k.push_back(k == 1 ? g.sign_unit.back() : combined(k, signk));
  }
  return g;
}

}  // namespace hyena::harness
