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
#include <set>
#include <sstream>

#include "hyena/bfv/encryptor.hpp"
#include "hyena/bfv/evaluator.hpp"
#include "hyena/bfv/serialization.hpp"
#include "hyena/params/search.hpp"

using namespace hyena;
using namespace hyena::bfv;

namespace {

const RingParams& gazelle() {
  static const RingParams rp = [] {
    const auto pr = params::find_primes(2048, 19, 60);
    return RingParams(2048, pr.p, pr.q);
  }();
  return rp;
}

const RingParams& small() {
  static const RingParams rp = [] {
    const auto pr = params::find_primes(64, 13, 40);
    return RingParams(64, pr.p, pr.q);
  }();
  return rp;
}

std::vector<u64> random_slots(const RingParams& rp, std::mt19937_64& rng) {
  std::vector<u64> v(rp.n);
  for (auto& x : v) x = rng() % rp.p.value();
  return v;
}

std::vector<u64> rotate_columns(const std::vector<u64>& v, long step) {
  const std::size_t half = v.size() / 2;
  std::vector<u64> r(v.size());
  for (std::size_t row = 0; row < 2; ++row)
    for (std::size_t c = 0; c < half; ++c) {
      const long src = ((static_cast<long>(c) + step) % static_cast<long>(half) + static_cast<long>(half)) % static_cast<long>(half);
      r[row * half + c] = v[row * half + static_cast<std::size_t>(src)];
    }
  return r;
}

std::vector<u64> swap_rows(const std::vector<u64>& v) {
  const std::size_t half = v.size() / 2;
  std::vector<u64> r(v.size());
  for (std::size_t c = 0; c < half; ++c) {
    r[c] = v[half + c];
    r[half + c] = v[c];
  }
  return r;
}

}  // namespace

TEST(Keygen, DeterministicAndSeedSensitive) {
  const auto& rp = small();
  EXPECT_EQ(keygen(rp, 1).s(), keygen(rp, 1).s());
  for (u64 seed = 2; seed < 12; ++seed) EXPECT_NE(keygen(rp, seed).s(), keygen(rp, seed + 100).s());
  const auto key = keygen(rp, 5);
  for (u64 c : key.s().coeffs) EXPECT_LE(c, 1u);
}

TEST(Keygen, ZeroSecretExposesScaledMessage) {
  const auto& rp = small();
  const auto sk = SecretKey::from_coefficients(rp, std::vector<u64>(rp.n, 0));
  Encryptor enc(rp, sk, 3);
  BatchEncoder be(rp);
  std::mt19937_64 rng(4);
  const auto pt = be.encode(random_slots(rp, rng));
  const auto ct = enc.encrypt(pt);
  for (std::size_t i = 0; i < rp.n; ++i) {
    const i64 e = rp.q.centered(rp.q.sub(ct.c0[i], rp.q.mul(rp.delta, pt.poly[i])));
    EXPECT_LE(std::llabs(e), static_cast<i64>(kErrorBound));
  }
}

TEST(Encoder, RoundTripAndConstants) {
  const auto& rp = gazelle();
  BatchEncoder be(rp);
  std::mt19937_64 rng(1);
  const auto v = random_slots(rp, rng);
  EXPECT_EQ(be.decode(be.encode(v)), v);
  const auto ones = be.encode(std::vector<u64>(rp.n, 1));
  EXPECT_EQ(ones.poly[0], 1u);
  for (std::size_t i = 1; i < rp.n; ++i) ASSERT_EQ(ones.poly[i], 0u);
  EXPECT_TRUE(be.encode(std::vector<u64>(rp.n, 0)).poly.is_zero());
  EXPECT_THROW(be.encode(std::vector<u64>(3, 0)), std::invalid_argument);
}

TEST(Encoder, SignPatternHasTwoCoefficientsOfH) {
  const auto& rp = gazelle();
  BatchEncoder be(rp);
  std::vector<u64> v(rp.n, 1);
  for (std::size_t i = rp.n / 2; i < rp.n; ++i) v[i] = rp.p.value() - 1;
  const auto pt = be.encode(v);
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < rp.n; ++i)
    if (pt.poly[i]) nz.push_back(i);
  ASSERT_EQ(nz.size(), 2u);
  for (auto i : nz) EXPECT_EQ(std::min(pt.poly[i], rp.p.value() - pt.poly[i]), 84248u);
}

TEST(Encoder, SlotwiseHomomorphism) {
  const auto& rp = small();
  BatchEncoder be(rp);
  std::mt19937_64 rng(2);
  const auto u = random_slots(rp, rng), v = random_slots(rp, rng);
  const auto prod = modring::poly_mul(be.encode(u).poly, be.encode(v).poly, *rp.ntt_p);
  const auto sum = modring::add(be.encode(u).poly, be.encode(v).poly);
  const auto dp = be.decode(Plaintext{prod}), ds = be.decode(Plaintext{sum});
  for (std::size_t i = 0; i < rp.n; ++i) {
    EXPECT_EQ(dp[i], rp.p.mul(u[i], v[i]));
    EXPECT_EQ(ds[i], rp.p.add(u[i], v[i]));
  }
}

class BfvGazelle : public ::testing::Test {
 protected:
  const RingParams& rp = gazelle();
  SecretKey sk = keygen(rp, 77);
  Encryptor enc{rp, sk, 78};
  Decryptor dec{rp, sk};
  BatchEncoder be{rp};
  Evaluator ev{rp};
  std::mt19937_64 rng{79};
};

TEST_F(BfvGazelle, EncryptDecrypt) {
  EXPECT_TRUE(dec.decrypt(enc.encrypt_zero()).poly.is_zero());
  for (int t = 0; t < 5; ++t) {
    const auto v = random_slots(rp, rng);
    EXPECT_EQ(be.decode(dec.decrypt(enc.encrypt(be.encode(v)))), v);
  }
}

TEST_F(BfvGazelle, FreshNoiseWithinSamplerBound) {
  for (int t = 0; t < 10; ++t) {
    const auto pt = be.encode(random_slots(rp, rng));
    const double bits = dec.noise_bits(enc.encrypt(pt), pt);
    EXPECT_LE(bits, std::log2(kErrorBound));
    EXPECT_GT(bits, 0.0);
  }
}

TEST_F(BfvGazelle, HAddChainAndNoise) {
  std::vector<u64> total(rp.n, 0);
  Ciphertext acc = enc.encrypt_zero();
  for (int i = 0; i < 10; ++i) {
    const auto v = random_slots(rp, rng);
    for (std::size_t j = 0; j < rp.n; ++j) total[j] = rp.p.add(total[j], v[j]);
    acc = ev.hadd(acc, enc.encrypt(be.encode(v)));
  }
  EXPECT_EQ(be.decode(dec.decrypt(acc)), total);
  EXPECT_LE(dec.noise_bits(acc, be.encode(total)), std::log2(11 * kErrorBound));

  const auto x = random_slots(rp, rng), y = random_slots(rp, rng);
  const auto px = be.encode(x), py = be.encode(y);
  const auto cx = enc.encrypt(px), cy = enc.encrypt(py);
  const auto s = ev.hadd(cx, cy);
  const auto ds = be.decode(dec.decrypt(s));
  for (std::size_t j = 0; j < rp.n; ++j) ASSERT_EQ(ds[j], rp.p.add(x[j], y[j]));
  const Plaintext sum_pt{modring::add(px.poly, py.poly)};
  EXPECT_LE(dec.noise_bits(s, sum_pt), std::max(dec.noise_bits(cx, px), dec.noise_bits(cy, py)) + 1.0);
  EXPECT_EQ(be.decode(dec.decrypt(ev.hadd(cx, enc.encrypt_zero()))), x);
  Ciphertext scaled = cy;
  scaled.scale_tag = 2;
  EXPECT_THROW(ev.hadd(cx, scaled), ScaleMismatch);
}

TEST_F(BfvGazelle, PMultProductAndNoiseOrdering) {
  const double dense_bound = std::log2(rp.n * static_cast<double>(rp.p.value()) / 2);
  const u64 h = 84248;
  std::vector<u64> sign(rp.n, 1);
  for (std::size_t i = rp.n / 2; i < rp.n; ++i) sign[i] = rp.p.value() - 1;
  const auto sign_pt = be.prepare(be.encode(sign));
  for (int t = 0; t < 10; ++t) {
    const auto u = random_slots(rp, rng), w = random_slots(rp, rng);
    const auto pu = be.encode(u);
    const auto ct = enc.encrypt(pu);
    const double fresh = dec.noise_bits(ct, pu);
    const auto prod = ev.pmult(ct, be.prepare(be.encode(w)));
    std::vector<u64> expect(rp.n);
    for (std::size_t j = 0; j < rp.n; ++j) expect[j] = rp.p.mul(u[j], w[j]);
    EXPECT_EQ(be.decode(dec.decrypt(prod)), expect);
    const double dense_growth = dec.noise_bits(prod, be.encode(expect)) - fresh;
    EXPECT_LE(dense_growth, dense_bound);

    const auto sp = ev.pmult(ct, sign_pt);
    std::vector<u64> sexp(rp.n);
    for (std::size_t j = 0; j < rp.n; ++j) sexp[j] = rp.p.mul(u[j], sign[j]);
    EXPECT_EQ(be.decode(dec.decrypt(sp)), sexp);
    const double sign_growth = dec.noise_bits(sp, be.encode(sexp)) - fresh;
    EXPECT_LE(sign_growth, std::log2(2.0 * h) + 1);
    EXPECT_LT(sign_growth, dense_growth);
  }
  const auto v = random_slots(rp, rng);
  EXPECT_EQ(be.decode(dec.decrypt(ev.pmult(enc.encrypt(be.encode(v)), be.prepare(be.encode(std::vector<u64>(rp.n, 1)))))), v);
}

TEST_F(BfvGazelle, SparsePMultMatchesDense) {
  std::vector<u64> sign(rp.n, 1);
  for (std::size_t i = rp.n / 2; i < rp.n; ++i) sign[i] = rp.p.value() - 1;
  const auto pt = be.encode(sign);
  std::vector<modring::SparseTerm> terms;
  for (std::size_t i = 0; i < rp.n; ++i)
    if (pt.poly[i]) terms.push_back({i, rp.q.from_signed(rp.p.centered(pt.poly[i]))});
  const auto ct = enc.encrypt(be.encode(random_slots(rp, rng)));
  EXPECT_EQ(ev.to_coeff(ev.pmult(ct, be.prepare(pt))), ev.pmult_sparse(ct, terms));
}

TEST_F(BfvGazelle, CMult) {
  const auto v = random_slots(rp, rng);
  const auto pv = be.encode(v);
  const auto ct = enc.encrypt(pv);
  EXPECT_EQ(be.decode(dec.decrypt(ev.cmult(ct, 1))), v);
  EXPECT_TRUE(dec.decrypt(ev.cmult(ct, 0)).poly.is_zero());
  const auto c255 = ev.cmult(ct, 255);
  std::vector<u64> e(rp.n);
  for (std::size_t j = 0; j < rp.n; ++j) e[j] = rp.p.mul(v[j], 255);
  EXPECT_EQ(be.decode(dec.decrypt(c255)), e);
  EXPECT_LE(dec.noise_bits(c255, be.encode(e)) - dec.noise_bits(ct, pv), 9.0);
}

TEST_F(BfvGazelle, GaloisKeySizes) {
  const auto k60 = galois_keygen(rp, sk, elements_for_steps(rp.n, {1}), 60, 1);
  EXPECT_EQ(k60.digits(), 1);
  EXPECT_EQ(k60.payload_bytes(), 32768u);
  const auto k20 = galois_keygen(rp, sk, elements_for_steps(rp.n, {1}), 20, 1);
  EXPECT_EQ(k20.digits(), 3);
  EXPECT_EQ(k20.payload_bytes(), 98304u);
  const auto none = galois_keygen(rp, sk, {}, 20, 1);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(none.payload_bytes(), 0u);
}

TEST_F(BfvGazelle, RotationSemantics) {
  const auto keys = galois_keygen(rp, sk, elements_for_steps(rp.n, {1, -1, 5, -5, 6}, true), 20, 2);
  const auto v = random_slots(rp, rng);
  const auto ct = enc.encrypt(be.encode(v));
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ct, 0, keys))), v);
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ct, 1, keys))), rotate_columns(v, 1));
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ct, -5, keys))), rotate_columns(v, -5));
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ev.hrot(ct, 5, keys), -5, keys))), v);
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ev.hrot(ct, 1, keys), 5, keys))), rotate_columns(v, 6));
  EXPECT_EQ(be.decode(dec.decrypt(ev.hrot(ct, 6, keys))), rotate_columns(v, 6));
  const auto sw = ev.row_swap(ct, keys);
  EXPECT_EQ(be.decode(dec.decrypt(sw)), swap_rows(v));
  EXPECT_EQ(be.decode(dec.decrypt(ev.row_swap(sw, keys))), v);
  EXPECT_THROW(ev.hrot(ct, 2, keys), KeyError);
}

TEST_F(BfvGazelle, RotationNoiseShrinksWithBase) {
  const auto k7 = galois_keygen(rp, sk, elements_for_steps(rp.n, {1}), 7, 3);
  const auto k20 = galois_keygen(rp, sk, elements_for_steps(rp.n, {1}), 20, 3);
  for (int t = 0; t < 5; ++t) {
    const auto v = random_slots(rp, rng);
    const auto ct = enc.encrypt(be.encode(v));
    const auto expect = be.encode(rotate_columns(v, 1));
    EXPECT_LT(dec.noise_bits(ev.hrot(ct, 1, k7), expect), dec.noise_bits(ev.hrot(ct, 1, k20), expect));
  }
}

TEST_F(BfvGazelle, HoistingIsBitIdentical) {
  std::vector<long> taps;
  for (long dy = -1; dy <= 1; ++dy)
    for (long dx = -1; dx <= 1; ++dx) taps.push_back(dy * 32 + dx);
  const auto keys = galois_keygen(rp, sk, elements_for_steps(rp.n, taps, true), 20, 4);
  const auto ct = enc.encrypt(be.encode(random_slots(rp, rng)));
  OpCounts counts;
  Evaluator counted(rp, &counts);
  const auto d = counted.hoist_decompose(ct, 20);
  for (long s : taps) EXPECT_EQ(counted.hoisted_rot(d, s, keys), ev.hrot(ct, s, keys)) << s;
  EXPECT_EQ(counted.hoisted_apply(d, row_swap_element(rp.n), keys), ev.row_swap(ct, keys));
  EXPECT_EQ(counts.decompositions, 1u);
  EXPECT_EQ(counts.rotations, 9u);
  EXPECT_EQ(ev.to_coeff(counted.hoisted_rot(d, 0, keys)), ct);
  EXPECT_THROW(counted.hoisted_rot(counted.hoist_decompose(ct, 10), 1, keys), std::invalid_argument);
}

TEST_F(BfvGazelle, NoiseMeterAtMarginAndZero) {
  const auto pt = be.encode(random_slots(rp, rng));
  Ciphertext forged{modring::Polynomial(rp.n, rp.q.value()), modring::Polynomial(rp.n, rp.q.value()), 1};
  for (std::size_t i = 0; i < rp.n; ++i) forged.c0[i] = rp.q.mul(rp.delta, pt.poly[i]);
  EXPECT_TRUE(std::isinf(dec.noise_bits(forged, pt)));
  EXPECT_EQ(dec.decrypt(forged), pt);
  Ciphertext noisy = enc.encrypt(pt);
  noisy.c0[3] = rp.q.add(noisy.c0[3], rp.delta / 2 + 50);
  EXPECT_GE(dec.noise_bits(noisy, pt), dec.margin_bits());
  EXPECT_NE(dec.decrypt(noisy), pt);
  EXPECT_THROW(dec.decrypt_checked(noisy, pt), DecryptionFailure);
  EXPECT_NO_THROW(dec.decrypt_checked(enc.encrypt(pt), pt));
}

TEST_F(BfvGazelle, SerializationRoundTripAndSizes) {
  const auto keys = galois_keygen(rp, sk, elements_for_steps(rp.n, {1, 2, 3}), 20, 5);
  std::stringstream ks;
  serial::write(ks, keys);
  const auto bytes = ks.str().size();
  EXPECT_EQ(bytes, serial::galois_keys_bytes(keys));
  EXPECT_EQ(keys.payload_bytes(), 3u * 2 * rp.n * 8 * 3);
  const auto back = serial::read_galois_keys(ks, rp);
  EXPECT_EQ(back.elements(), keys.elements());
  const auto ct = enc.encrypt(be.encode(random_slots(rp, rng)));
  for (u64 g : keys.elements()) EXPECT_EQ(ev.apply_galois(ct, g, back), ev.apply_galois(ct, g, keys));

  std::stringstream cs;
  serial::write(cs, ct);
  EXPECT_EQ(cs.str().size(), serial::ciphertext_bytes(rp.n));
  EXPECT_EQ(serial::read_ciphertext(cs), ct);
  const auto pt = be.encode(random_slots(rp, rng));
  std::stringstream ps;
  serial::write(ps, pt);
  EXPECT_EQ(ps.str().size(), serial::plaintext_bytes(rp.n));
  EXPECT_EQ(serial::read_plaintext(ps, rp.p.value()), pt);
}
