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


#include <gtest/gtest.h>

#include <random>

#include "hyena/modring/modulus.hpp"
#include "hyena/oracle/reference.hpp"

using namespace hyena;
using namespace hyena::oracle;

namespace {

// Scatter form: every input pixel pushes its contribution to the outputs it touches.
PlainTensor conv_scatter(const PlainTensor& x, const Kernel& k, u64 p) {
  PlainTensor out(k.C_out, x.H, x.W);
  const long r = static_cast<long>(k.f / 2);
  for (std::size_t c = 0; c < x.C; ++c)
    for (long sy = 0; sy < static_cast<long>(x.H); ++sy)
      for (long sx = 0; sx < static_cast<long>(x.W); ++sx)
        for (std::size_t o = 0; o < k.C_out; ++o)
          for (std::size_t dy = 0; dy < k.f; ++dy)
            for (std::size_t dx = 0; dx < k.f; ++dx) {
              const long y = sy - static_cast<long>(dy) + r, xx = sx - static_cast<long>(dx) + r;
              if (y < 0 || xx < 0 || y >= static_cast<long>(x.H) || xx >= static_cast<long>(x.W)) continue;
              auto& v = out.at(o, y, xx);
              v = static_cast<u64>((static_cast<u128>(k.at(o, c, dy, dx)) * x.at(c, sy, sx) + v) % p);
            }
  return out;
}

std::vector<u64> polymul_fold(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t n, u64 m) {
  std::vector<u128> full(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) full[i + j] = (full[i + j] + static_cast<u128>(a[i]) * b[j]) % m;
  std::vector<u64> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<u64>((full[i] + m - full[i + n]) % m);
  return c;
}

}  // namespace

TEST(Oracle, IdentityKernelReturnsInput) {
  const auto x = random_tensor(3, 5, 7, 1000, 1);
  Kernel k(3, 3, 3);
  for (std::size_t c = 0; c < 3; ++c) k.at(c, c, 1, 1) = 1;
  EXPECT_EQ(conv_reference(x, k, 1009), x);
}

TEST(Oracle, HandComputedBoxFilter) {
  PlainTensor x(1, 3, 3);
  for (std::size_t i = 0; i < 9; ++i) x.values[i] = i + 1;
  Kernel k(1, 1, 3);
  std::fill(k.values.begin(), k.values.end(), 1);
  const auto y = conv_reference(x, k, 1000003);
  EXPECT_EQ(y.values, (std::vector<u64>{12, 21, 16, 27, 45, 33, 24, 39, 28}));
}

TEST(Oracle, ScatterFormAgrees) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t C = 1 + rng() % 4, O = 1 + rng() % 4, H = 1 + rng() % 9, W = 1 + rng() % 9;
    const std::size_t f = (rng() % 3) * 2 + 1;
    const u64 p = trial % 2 ? 307201 : 65537;
    const auto x = random_tensor(C, H, W, p, rng());
    const auto k = random_kernel(O, C, f, 256, rng());
    EXPECT_EQ(conv_reference(x, k, p), conv_scatter(x, k, p));
  }
}

TEST(Oracle, PolymulAgreesWithFold) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {1u, 2u, 8u, 32u}) {
    for (u64 m : std::initializer_list<u64>{17ULL, 307201ULL, 576460762369785857ULL}) {
      std::vector<u64> a(n), b(n);
      for (auto& v : a) v = rng() % m;
      for (auto& v : b) v = rng() % m;
      EXPECT_EQ(polymul_reference(a, b, n, m), polymul_fold(a, b, n, m));
    }
  }
}

TEST(Oracle, NegacyclicWrap) {
  std::vector<u64> x(4, 0);
  x[3] = 1;
  EXPECT_EQ(polymul_reference(x, x, 4, 97), (std::vector<u64>{0, 0, 96, 0}));
}
