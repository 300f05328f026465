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

#include <cmath>
#include <random>

#include "hyena/modring/number_theory.hpp"
#include "hyena/modring/poly_ops.hpp"
#include "hyena/modring/ring_params.hpp"
#include "hyena/modring/wide.hpp"
#include "hyena/oracle/reference.hpp"

using namespace hyena;
using namespace hyena::modring;

namespace {

constexpr u64 kQ60 = 576460762369785857ULL;

Polynomial random_poly(std::size_t n, u64 m, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, m - 1);
  Polynomial a(n, m);
  for (auto& c : a.coeffs) c = dist(rng);
  return a;
}

u64 eval_at(const Polynomial& a, u64 point, u64 m) {
  u64 acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = (mulmod(acc, point, m) + a[i]) % m;
  return acc;
}

// Solves V * c = rhs mod prime m by Gauss-Jordan elimination.
std::vector<u64> solve_mod(std::vector<std::vector<u64>> v, std::vector<u64> rhs, u64 m) {
  const std::size_t n = rhs.size();
  const Modulus mod(m);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (v[piv][col] == 0) ++piv;
    std::swap(v[piv], v[col]);
    std::swap(rhs[piv], rhs[col]);
    const u64 inv = mod.inverse(v[col][col]);
    for (std::size_t j = 0; j < n; ++j) v[col][j] = mod.mul(v[col][j], inv);
    rhs[col] = mod.mul(rhs[col], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || v[r][col] == 0) continue;
      const u64 f = v[r][col];
      for (std::size_t j = 0; j < n; ++j) v[r][j] = mod.sub(v[r][j], mod.mul(f, v[col][j]));
      rhs[r] = mod.sub(rhs[r], mod.mul(f, rhs[col]));
    }
  }
  return rhs;
}

}  // namespace

TEST(Modulus, BarrettMatchesBuiltinRemainder) {
  std::mt19937_64 rng(1);
  for (u64 m : std::initializer_list<u64>{97, 307201, kQ60, (1ULL << 61) - 1}) {
    const Modulus mod(m);
    for (int i = 0; i < 20000; ++i) {
      const u128 x = (static_cast<u128>(rng()) << 56) ^ rng();
      ASSERT_EQ(mod.reduce(x), static_cast<u64>(x % m));
      const u64 a = rng() % m, b = rng() % m;
      ASSERT_EQ(mod.mul(a, b), static_cast<u64>(static_cast<u128>(a) * b % m));
      ASSERT_EQ(mod.mul_shoup(a, b, mod.shoup(b)), mod.mul(a, b));
    }
    EXPECT_EQ(mod.reduce(~u128{0}), static_cast<u64>(~u128{0} % m));
  }
}

TEST(Modulus, InverseCenteredAndSigned) {
  const Modulus m(307201);
  for (u64 a : std::initializer_list<u64>{1, 2, 84248, 307200}) EXPECT_EQ(m.mul(a, m.inverse(a)), 1u);
  EXPECT_EQ(m.centered(307200), -1);
  EXPECT_EQ(m.centered(84248), 84248);
  EXPECT_EQ(m.centered(222953), -84248);
  EXPECT_EQ(m.from_signed(-1), 307200u);
  EXPECT_EQ(m.from_signed(-307202), 307200u);
  EXPECT_THROW(m.inverse(0), std::invalid_argument);
}

TEST(NumberTheory, PrimalityAgainstTrialDivision) {
  auto trial = [](u64 v) {
    if (v < 2) return false;
    for (u64 d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  for (u64 v = 0; v < 20000; ++v) ASSERT_EQ(is_prime(v), trial(v)) << v;
  EXPECT_TRUE(is_prime(kQ60));
  EXPECT_FALSE(is_prime(kQ60 + 2));
  EXPECT_FALSE(is_prime(3215031751ULL));
}

TEST(NumberTheory, MinimalPrimitiveRoot) {
  const u64 psi = minimal_primitive_root(4096, 307201);
  EXPECT_EQ(psi, 41u);
  EXPECT_EQ(powmod(psi, 2048, 307201), 307200u);
  for (u64 g = 2; g < psi; ++g) EXPECT_NE(powmod(g, 2048, 307201), 307200u);
}

TEST(Ntt, ZeroAndConstant) {
  const NttTables t(16, Modulus(97));
  Polynomial z(16, 97);
  EXPECT_TRUE(ntt_forward(z, t).is_zero());
  Polynomial c(16, 97);
  c[0] = 42;
  const auto e = ntt_forward(c, t);
  for (u64 v : e.coeffs) EXPECT_EQ(v, 42u);
  EXPECT_TRUE(ntt_inverse(Polynomial(16, 97, Domain::evaluation), t).is_zero());
}

TEST(Ntt, MatchesDirectEvaluationAtOddRootPowers) {
  const NttTables t(16, Modulus(97));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_poly(16, 97, rng);
    const auto e = ntt_forward(a, t);
    for (std::size_t i = 0; i < 16; ++i) {
      EXPECT_EQ(e[i], eval_at(a, powmod(t.psi(), t.exponent(i), 97), 97));
    }
  }
  std::vector<bool> seen(32, false);
  for (std::size_t i = 0; i < 16; ++i) seen[t.exponent(i)] = true;
  for (u64 odd = 1; odd < 32; odd += 2) EXPECT_TRUE(seen[odd]);
}

TEST(Ntt, OnesSlotVectorIsConstantOneByLinearSolve) {
  const u64 m = 97;
  const NttTables t(16, Modulus(m));
  std::vector<std::vector<u64>> v(16, std::vector<u64>(16));
  for (std::size_t i = 0; i < 16; ++i) {
    const u64 pt = powmod(t.psi(), t.exponent(i), m);
    for (std::size_t j = 0; j < 16; ++j) v[i][j] = powmod(pt, j, m);
  }
  const auto solved = solve_mod(v, std::vector<u64>(16, 1), m);
  Polynomial ones(std::vector<u64>(16, 1), m, Domain::evaluation);
  EXPECT_EQ(ntt_inverse(ones, t).coeffs, solved);
  EXPECT_EQ(solved[0], 1u);
}

TEST(Ntt, RoundTripGazelleSize) {
  const NttTables t(2048, Modulus(kQ60));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_poly(2048, kQ60, rng);
    EXPECT_EQ(ntt_inverse(ntt_forward(a, t), t), a);
  }
}

TEST(Ntt, DomainAndModulusChecks) {
  const NttTables t(16, Modulus(97));
  EXPECT_THROW(ntt_inverse(Polynomial(16, 97), t), DomainError);
  EXPECT_THROW(ntt_forward(Polynomial(16, 97, Domain::evaluation), t), DomainError);
  EXPECT_THROW(ntt_forward(Polynomial(16, 193), t), ModulusMismatch);
  EXPECT_THROW(ntt_forward(Polynomial(32, 97), t), ModulusMismatch);
}

TEST(Ntt, RoundTripAndSchoolbookOverThousandCases) {
  std::mt19937_64 rng(2024);
  int cases = 0;
  for (std::size_t n : std::initializer_list<std::size_t>{2, 4, 8, 16, 32, 64}) {
    std::vector<u64> moduli;
    for (u64 m = 2 * n + 1; moduli.size() < 3; m += 2 * n)
      if (is_prime(m)) moduli.push_back(m);
    moduli.push_back(kQ60);
    for (u64 m : moduli) {
      const NttTables t(n, Modulus(m));
      for (int i = 0; i < 50; ++i, ++cases) {
        const auto a = random_poly(n, m, rng);
        const auto b = random_poly(n, m, rng);
        ASSERT_EQ(ntt_inverse(ntt_forward(a, t), t), a);
        ASSERT_EQ(poly_mul(a, b, t).coeffs, oracle::polymul_reference(a.coeffs, b.coeffs, n, m));
      }
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(PolyMul, IdentityAndWraparound) {
  const std::size_t n = 32;
  const u64 m = 193;
  const NttTables t(n, Modulus(m));
  std::mt19937_64 rng(3);
  const auto a = random_poly(n, m, rng);
  Polynomial one(n, m);
  one[0] = 1;
  EXPECT_EQ(poly_mul(a, one, t), a);
  Polynomial top(n, m), x(n, m);
  top[n - 1] = 1;
  x[1] = 1;
  const auto r = poly_mul(top, x, t);
  EXPECT_EQ(r[0], m - 1);
  for (std::size_t i = 1; i < n; ++i) EXPECT_EQ(r[i], 0u);
  EXPECT_THROW(poly_mul(a, Polynomial(n, 97), t), ModulusMismatch);
}

TEST(SparseMul, IdentityShiftAndDenseEquality) {
  const std::size_t n = 64;
  const u64 m = 257;
  const NttTables t(n, Modulus(m));
  std::mt19937_64 rng(5);
  const auto a = random_poly(n, m, rng);
  EXPECT_EQ(sparse_mul(a, {{0, 1}}), a);
  const auto s = sparse_mul(a, {{1, 1}});
  EXPECT_EQ(s[0], (m - a[n - 1]) % m);
  for (std::size_t i = 1; i < n; ++i) EXPECT_EQ(s[i], a[i - 1]);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SparseTerm> sp{{rng() % n, rng() % m}, {rng() % n, rng() % m}};
    EXPECT_EQ(sparse_mul(a, sp), poly_mul(a, densify(sp, n, m), t));
  }
  EXPECT_THROW(sparse_mul(a, {{n, 1}}), std::out_of_range);
}

TEST(WideAccumulator, ZeroScalarAndSingleMac) {
  const std::size_t n = 64;
  std::mt19937_64 rng(9);
  const auto a = random_poly(n, kQ60, rng);
  WideAccumulator acc(n, kQ60, Domain::coefficient, 255, 4);
  acc.lazy_mac(a, 0);
  EXPECT_TRUE(acc.reduce().is_zero());
  acc.lazy_mac(a, 200);
  EXPECT_EQ(acc.reduce(), scalar_mul(a, 200, Modulus(kQ60)));
  EXPECT_EQ(acc.term_count(), 2u);
}

TEST(WideAccumulator, LazyFoldEqualsEagerFold) {
  const std::size_t n = 128;
  const Modulus q(kQ60);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    WideAccumulator acc(n, kQ60, Domain::evaluation, 306000, 300);
    Polynomial eager(n, kQ60, Domain::evaluation);
    for (int t = 0; t < 300; ++t) {
      auto a = random_poly(n, kQ60, rng);
      a.domain = Domain::evaluation;
      const u64 s = rng() % 306000;
      acc.lazy_mac(a, s);
      eager = add(eager, scalar_mul(a, s, q));
    }
    ASSERT_EQ(acc.reduce(), eager);
  }
}

TEST(WideAccumulator, CapacityBound576) {
  const std::size_t n = 64;
  WideAccumulator acc(n, kQ60, Domain::coefficient, 255, 576);
  Polynomial worst(std::vector<u64>(n, kQ60 - 1), kQ60);
  for (int i = 0; i < 576; ++i) acc.lazy_mac(worst, 255);
  EXPECT_LT(acc.max_bits(), 120);
  EXPECT_EQ(acc.reduce()[0], Modulus(kQ60).mul(kQ60 - 1, 576 * 255));
  EXPECT_THROW(acc.lazy_mac(worst, 1), CapacityError);
  EXPECT_THROW(WideAccumulator(n, kQ60, Domain::coefficient, 1ULL << 40, 1ULL << 21), CapacityError);
  EXPECT_THROW(acc.lazy_mac(Polynomial(n, kQ60, Domain::evaluation), 1), DomainError);
}

TEST(WideAccumulator, ReduceCanonicalises) {
  WideAccumulator acc(4, 97, Domain::coefficient, 1000, 10);
  acc.coeffs()[0] = 2 * 97 + 3;
  acc.coeffs()[1] = 96;
  const auto r = reduce(acc);
  EXPECT_EQ(r[0], 3u);
  EXPECT_EQ(r[1], 96u);
}

TEST(RingParams, Invariants) {
  const RingParams rp(2048, 307201, kQ60);
  EXPECT_EQ(rp.delta, kQ60 / 307201);
  EXPECT_LE(rp.delta * 307201, kQ60);
  EXPECT_LT(kQ60, (rp.delta + 1) * 307201);
  EXPECT_THROW(RingParams(2048, 270337 + 2, kQ60), std::invalid_argument);
  EXPECT_THROW(RingParams(3000, 307201, kQ60), std::invalid_argument);
}
