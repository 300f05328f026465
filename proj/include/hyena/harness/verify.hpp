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
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyena/bfv/encryptor.hpp"
#include "hyena/bfv/evaluator.hpp"
#include "hyena/conv/convolution.hpp"
#include "hyena/oracle/reference.hpp"
#include "hyena/params/search.hpp"

namespace hyena::harness {

/// Ring parameters, secret key and codec shared by a batch of runs.
struct Session {
  bfv::RingParams rp;
  bfv::SecretKey sk;
  bfv::BatchEncoder encoder;
  bfv::Decryptor decryptor;
  u64 seed;

  Session(std::size_t n, int p_bits, int q_bits, u64 s)
      : rp(make_params(n, p_bits, q_bits)), sk(bfv::keygen(rp, s)), encoder(rp), decryptor(rp, sk), seed(s) {}

  static bfv::RingParams make_params(std::size_t n, int p_bits, int q_bits) {
    const auto pr = params::find_primes(n, p_bits, q_bits);
    return bfv::RingParams(n, pr.p, pr.q);
  }
};

struct RunConfig {
  conv::LayerSpec spec;
  conv::Algo algo = conv::Algo::hyena;
  int base_bits = 20;
  int digits = 1;
  u64 k = 1;
  conv::ConvOptions opt;
  u64 seed = 1;
  u64 weight_bound = 256;
  bool corrupt_kernel = false;
};

struct RunOutcome {
  bool pass = false;
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  std::size_t first_c = 0, first_y = 0, first_x = 0;
  u64 expected = 0, got = 0;
  double noise_bits = -std::numeric_limits<double>::infinity();
  double margin_bits = 0;
  conv::ConvResult result;
  std::size_t key_bytes = 0;
  std::size_t model_bytes = 0;
  std::size_t input_cts = 0;

  std::string describe() const {
    if (pass) return "ok (" + std::to_string(compared) + " values)";
    return "mismatch at (c=" + std::to_string(first_c) + ", y=" + std::to_string(first_y) + ", x=" + std::to_string(first_x) +
           "): expected " + std::to_string(expected) + ", got " + std::to_string(got) + "; " + std::to_string(mismatches) +
           " of " + std::to_string(compared) + " differ";
  }
};

/// Input convention: zero outside each tile's interior whenever outputs are only valid there.
inline bool input_needs_padding(conv::Algo algo, const conv::Layout& lay) {
  return algo != conv::Algo::conventional || lay.tiled();
}

inline bool output_compared(conv::Algo algo, const conv::Layout& lay, std::size_t y, std::size_t x, std::size_t r) {
  return algo == conv::Algo::conventional || lay.interior(y, x, r);
}

inline PlainTensor make_input(const conv::LayerSpec& spec, const conv::Layout& lay, conv::Algo algo, u64 p, u64 seed) {
  auto x = random_tensor(spec.C_in, spec.H, spec.W, p, seed);
  if (input_needs_padding(algo, lay))
    for (std::size_t c = 0; c < x.C; ++c)
      for (std::size_t y = 0; y < x.H; ++y)
        for (std::size_t xx = 0; xx < x.W; ++xx)
          if (!lay.interior(y, xx, spec.r())) x.at(c, y, xx) = 0;
  return x;
}

/// Encrypts a random input, runs one convolution and compares against the plaintext oracle.
inline RunOutcome run_layer(const Session& s, const RunConfig& cfg, const bfv::GaloisKeySet* given_keys = nullptr) {
  const auto& rp = s.rp;
  const conv::Layout lay(rp.n, cfg.spec.H, cfg.spec.W);
  const auto x = make_input(cfg.spec, lay, cfg.algo, rp.p.value(), cfg.seed * 7919 + 1);
  auto kernel = random_kernel(cfg.spec.C_out, cfg.spec.C_in, cfg.spec.f, cfg.weight_bound, cfg.seed * 7919 + 2);
  const auto expected = oracle::conv_reference(x, kernel, rp.p.value());

  std::optional<bfv::GaloisKeySet> own_keys;
  if (!given_keys) own_keys = bfv::galois_keygen(rp, s.sk, conv::required_elements(cfg.algo, cfg.spec, lay), cfg.base_bits, cfg.seed * 7919 + 3);
  const auto& keys = given_keys ? *given_keys : *own_keys;

  if (cfg.corrupt_kernel) kernel.values[kernel.values.size() / 2] ^= 1;

  bfv::Encryptor enc(rp, s.sk, cfg.seed * 7919 + 4);
  bfv::Evaluator ev(rp);
  RunOutcome out;
  const int digits = cfg.algo == conv::Algo::conventional ? cfg.digits : 1;
  const auto packed = conv::pack_tensor(x, lay, s.encoder, enc, digits, conv::decomposition_bits(rp.p.value()));
  out.input_cts = packed.cts.size() + packed.shifted.size();
  out.key_bytes = keys.payload_bytes();
  switch (cfg.algo) {
    case conv::Algo::conventional: {
      const auto K = conv::encode_kernel_conventional(kernel, cfg.spec, lay, s.encoder, digits);
      out.model_bytes = K.storage_bytes();
      out.result = conv::conv_conventional(packed, K, keys, ev, cfg.opt);
      break;
    }
    case conv::Algo::padded: {
      const auto K = conv::encode_kernel_padded(kernel, cfg.spec, lay);
      out.model_bytes = K.storage_bytes();
      out.result = conv::conv_padded(packed, K, keys, ev, cfg.opt);
      break;
    }
    case conv::Algo::hyena: {
      const auto K = conv::encode_kernel_hyena(kernel, cfg.spec, lay, s.encoder, cfg.k);
      out.model_bytes = K.storage_bytes();
      out.result = conv::conv_hyena(packed, K, keys, ev, cfg.opt);
      break;
    }
  }
  for (const auto& ct : out.result.out.cts) out.noise_bits = std::max(out.noise_bits, s.decryptor.apparent_noise_bits(ct));
  out.margin_bits = s.decryptor.margin_bits();

  const auto got = conv::unpack_output(out.result.out, s.decryptor, s.encoder);
  for (std::size_t c = 0; c < expected.C; ++c)
    for (std::size_t y = 0; y < expected.H; ++y)
      for (std::size_t xx = 0; xx < expected.W; ++xx) {
        if (!output_compared(cfg.algo, lay, y, xx, cfg.spec.r())) continue;
        ++out.compared;
        if (got.at(c, y, xx) != expected.at(c, y, xx)) {
          if (out.mismatches == 0) {
            out.first_c = c;
            out.first_y = y;
            out.first_x = xx;
            out.expected = expected.at(c, y, xx);
            out.got = got.at(c, y, xx);
          }
          ++out.mismatches;
        }
      }
  out.pass = out.mismatches == 0 && out.compared > 0;
  return out;
}

}  // namespace hyena::harness
