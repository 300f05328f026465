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
#include <random>
#include <stdexcept>
#include <vector>

namespace hyena {

/// C x H x W tensor of residues mod p.
struct PlainTensor {
  std::size_t C = 0, H = 0, W = 0;
  std::vector<std::uint64_t> values;

  PlainTensor() = default;
  PlainTensor(std::size_t c, std::size_t h, std::size_t w) : C(c), H(h), W(w), values(c * h * w, 0) {}

  std::uint64_t& at(std::size_t c, std::size_t y, std::size_t x) { return values[(c * H + y) * W + x]; }
  std::uint64_t at(std::size_t c, std::size_t y, std::size_t x) const { return values[(c * H + y) * W + x]; }

  friend bool operator==(const PlainTensor&, const PlainTensor&) = default;
};

/// Convolution weights indexed [out][in][dy][dx], each a residue mod p.
struct Kernel {
  std::size_t C_out = 0, C_in = 0, f = 0;
  std::vector<std::uint64_t> values;

  Kernel() = default;
  Kernel(std::size_t out, std::size_t in, std::size_t size) : C_out(out), C_in(in), f(size), values(out * in * size * size, 0) {}

  std::uint64_t& at(std::size_t o, std::size_t c, std::size_t dy, std::size_t dx) {
    return values[((o * C_in + c) * f + dy) * f + dx];
  }
  std::uint64_t at(std::size_t o, std::size_t c, std::size_t dy, std::size_t dx) const {
    return values[((o * C_in + c) * f + dy) * f + dx];
  }

  friend bool operator==(const Kernel&, const Kernel&) = default;
};

/// Uniform values in [0, bound) from a seeded stream.
inline PlainTensor random_tensor(std::size_t c, std::size_t h, std::size_t w, std::uint64_t bound, std::uint64_t seed) {
  PlainTensor t(c, h, w);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  for (auto& v : t.values) v = dist(rng);
  return t;
}

inline Kernel random_kernel(std::size_t out, std::size_t in, std::size_t f, std::uint64_t bound, std::uint64_t seed) {
  Kernel k(out, in, f);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  for (auto& v : k.values) v = dist(rng);
  return k;
}

}  // namespace hyena
