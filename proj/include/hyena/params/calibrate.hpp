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
#include <cstddef>
#include <string>
#include <vector>

#include "hyena/errors.hpp"
#include "hyena/harness/verify.hpp"

namespace hyena::params {

inline const std::vector<int>& dcmp_base_grid() {
  static const std::vector<int> grid = {4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 30};
  return grid;
}

struct CalibrationOptions {
  int digits = 1;
  u64 k = 1;
  double guard_bits = 4.0;
  u64 seed = 1;
  u64 weight_bound = 256;
};

struct CalibrationTrial {
  int base_bits = 0;
  double noise_bits = 0;
  bool pass = false;
};

struct Calibration {
  int base_bits = 0;
  double margin_bits = 0;
  std::vector<CalibrationTrial> trials;
};

/// Smaller layer with the same packing, ring degree, per-output accumulation depth and operation mix.
inline conv::LayerSpec calibration_layer(const conv::LayerSpec& spec, std::size_t n) {
  conv::LayerSpec s = spec;
  for (;;) {
    const conv::Layout lay(n, s.H, s.W);
    if (lay.units == 1 || s.H <= 2 * spec.r() + 2) break;
    s.H /= 2;
  }
  const conv::Layout lay(n, s.H, s.W);
  s.C_out = std::min(s.C_out, lay.cn);
  return s;
}

inline Calibration calibrate(const harness::Session& session, const conv::LayerSpec& spec, conv::Algo algo,
                             const CalibrationOptions& opt = {}) {
  Calibration cal;
  cal.margin_bits = session.decryptor.margin_bits();
  harness::RunConfig cfg;
  cfg.spec = calibration_layer(spec, session.rp.n);
  cfg.algo = algo;
  cfg.digits = opt.digits;
  cfg.k = opt.k;
  cfg.seed = opt.seed;
  cfg.weight_bound = opt.weight_bound;
  const auto& grid = dcmp_base_grid();
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    cfg.base_bits = *it;
    const auto out = harness::run_layer(session, cfg);
    CalibrationTrial t{*it, out.noise_bits, out.pass && out.noise_bits <= cal.margin_bits - opt.guard_bits};
    cal.trials.push_back(t);
    if (t.pass) {
      cal.base_bits = *it;
      return cal;
    }
  }
  throw InfeasibleError("no decomposition base in the grid leaves " + std::to_string(opt.guard_bits) + " spare bits for " +
                        spec.str() + " (" + conv::to_string(algo) + ")");
}

inline int select_dcmp_base(const harness::Session& session, const conv::LayerSpec& spec, conv::Algo algo,
                            const CalibrationOptions& opt = {}) {
  return calibrate(session, spec, algo, opt).base_bits;
}

/// Noise of one rotation of a fresh ciphertext for every base in the grid; one row per trial.
inline std::vector<std::vector<double>> hrot_noise_sweep(const harness::Session& session, std::size_t trials, u64 seed,
                                                        long step = 1) {
  const auto& rp = session.rp;
  const auto& grid = dcmp_base_grid();
  const u64 g = bfv::rotation_element(rp.n, step);
  std::vector<bfv::GaloisKeySet> keys;
  for (std::size_t i = 0; i < grid.size(); ++i) keys.push_back(bfv::galois_keygen(rp, session.sk, {g}, grid[i], seed + i));
  bfv::Evaluator ev(rp);
  std::vector<std::vector<double>> out(trials, std::vector<double>(grid.size()));
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<u64> v(rp.n);
    for (auto& x : v) x = rng() % rp.p.value();
    const auto pt = session.encoder.encode(v);
    bfv::Encryptor enc(rp, session.sk, rng());
    const auto ct = enc.encrypt(pt);
    for (std::size_t i = 0; i < grid.size(); ++i) out[t][i] = session.decryptor.apparent_noise_bits(ev.hrot(ct, step, keys[i]));
  }
  return out;
}

}  // namespace hyena::params
