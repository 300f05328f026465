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
#include <vector>

#include "hyena/oracle/tensor.hpp"

namespace hyena::oracle {

/// Same-size, stride-1, zero-padded convolution mod p.
inline PlainTensor conv_reference(const PlainTensor& x, const Kernel& k, std::uint64_t p) {
  PlainTensor out(k.C_out, x.H, x.W);
  const long r = static_cast<long>(k.f / 2);
  const long H = static_cast<long>(x.H), W = static_cast<long>(x.W);
  for (std::size_t o = 0; o < k.C_out; ++o) {
    for (long y = 0; y < H; ++y) {
      for (long xx = 0; xx < W; ++xx) {
        unsigned __int128 sum = 0;
        for (std::size_t c = 0; c < k.C_in; ++c) {
          for (std::size_t dy = 0; dy < k.f; ++dy) {
            for (std::size_t dx = 0; dx < k.f; ++dx) {
              const long sy = y + static_cast<long>(dy) - r;
              const long sx = xx + static_cast<long>(dx) - r;
              if (sy < 0 || sy >= H || sx < 0 || sx >= W) continue;
              sum += static_cast<unsigned __int128>(k.at(o, c, dy, dx)) * x.at(c, sy, sx);
            }
          }
        }
        out.at(o, y, xx) = static_cast<std::uint64_t>(sum % p);
      }
    }
  }
  return out;
}

/// Schoolbook product in Z_m[x]/(x^n+1).
inline std::vector<std::uint64_t> polymul_reference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                                    std::size_t n, std::uint64_t m) {
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto prod = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a[i] % m) * (b[j] % m) % m);
      const std::size_t k = i + j;
      if (k < n) {
        c[k] = (c[k] + prod) % m;
      } else {
        c[k - n] = (c[k - n] + m - prod) % m;
      }
    }
  }
  return c;
}

}  // namespace hyena::oracle
