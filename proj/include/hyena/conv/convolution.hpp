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

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hyena/bfv/evaluator.hpp"
#include "hyena/conv/kernels.hpp"
#include "hyena/conv/layout.hpp"
#include "hyena/modring/wide.hpp"

namespace hyena::conv {

using modring::Domain;

enum class Algo { conventional, padded, hyena };

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::conventional: return "conventional";
    case Algo::padded: return "padded";
    case Algo::hyena: return "hyena";
  }
  return "?";
}

inline Algo parse_algo(const std::string& s) {
  if (s == "conventional" || s == "conv" || s == "gazelle") return Algo::conventional;
  if (s == "padded") return Algo::padded;
  if (s == "hyena" || s == "proposed") return Algo::hyena;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

struct ConvOptions {
  bool hoisting = true;
  bool lazy = true;
  bool sparse_sign = false;
  std::size_t threads = 1;
};

struct ConvResult {
  PackedTensor out;
  bfv::OpCounts counts;
  double seconds_rotate = 0;
  double seconds_accumulate = 0;

  double seconds() const noexcept { return seconds_rotate + seconds_accumulate; }
};

/// Galois elements needed for the tap rotations and the output alignment of a layer.
inline std::set<u64> required_elements(Algo algo, const LayerSpec& spec, const Layout& lay) {
  std::set<u64> out;
  for (std::size_t tap = 0; tap < spec.taps(); ++tap) {
    const u64 g = bfv::rotation_element(lay.n, tap_step(lay, spec.f, tap));
    if (g != 1) out.insert(g);
  }
  for (std::size_t d = 1; d < lay.cn; ++d)
    out.insert(algo == Algo::padded ? lay.gather_element(d) : lay.diagonal_element(d));
  return out;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// rot[ct][tap] for every input ciphertext, in evaluation form.
inline std::vector<std::vector<Ciphertext>> rotate_inputs(const std::vector<Ciphertext>& cts, const LayerSpec& spec,
                                                          const Layout& lay, const bfv::GaloisKeySet& keys,
                                                          const bfv::Evaluator& ev, bool hoisting) {
  std::vector<std::vector<Ciphertext>> rot(cts.size());
  for (std::size_t i = 0; i < cts.size(); ++i) {
    rot[i].reserve(spec.taps());
    if (hoisting && spec.taps() > 1) {
      const auto d = ev.hoist_decompose(cts[i], keys.base_bits());
      for (std::size_t tap = 0; tap < spec.taps(); ++tap) rot[i].push_back(ev.hoisted_rot(d, tap_step(lay, spec.f, tap), keys));
    } else {
      for (std::size_t tap = 0; tap < spec.taps(); ++tap) rot[i].push_back(ev.hrot(cts[i], tap_step(lay, spec.f, tap), keys));
    }
  }
  return rot;
}

/// Runs work(unit, evaluator) for every output unit, optionally across threads with private counters.
template <class Work>
void for_each_unit(std::size_t units, std::size_t threads, const bfv::Evaluator& base, bfv::OpCounts& total, Work work) {
  threads = std::max<std::size_t>(1, std::min(threads, units));
  std::vector<bfv::OpCounts> counts(threads);
  auto run = [&](std::size_t t) {
    bfv::Evaluator ev(base.params(), &counts[t]);
    for (std::size_t u = t; u < units; u += threads) work(u, ev, counts[t]);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& c : counts) total += c;
}

inline Ciphertext zero_eval(const bfv::RingParams& rp) {
  return Ciphertext{modring::Polynomial(rp.n, rp.q.value(), Domain::evaluation),
                    modring::Polynomial(rp.n, rp.q.value(), Domain::evaluation), 1};
}

inline void add_into(Ciphertext& acc, const Ciphertext& x, bool& empty, const bfv::Evaluator& ev) {
  if (empty) {
    acc = x;
    empty = false;
  } else {
    ev.hadd_inplace(acc, x);
  }
}

}  // namespace detail

/// Packed convolution with diagonal plaintexts over hoisted tap rotations.
inline ConvResult conv_conventional(const PackedTensor& x, const ConvKernelConventional& K, const bfv::GaloisKeySet& keys,
                                    const bfv::Evaluator& ev, const ConvOptions& opt = {}) {
  const auto& lay = K.layout;
  const auto& spec = K.spec;
  if (x.digits() != static_cast<std::size_t>(K.digits)) throw std::invalid_argument("input digits do not match kernel");
  ConvResult res;
  bfv::Evaluator ev0(ev.params(), &res.counts);
  auto t0 = detail::Clock::now();
  const auto rot = detail::rotate_inputs(x.cts, spec, lay, keys, ev0, opt.hoisting);
  std::vector<std::vector<Ciphertext>> rot_hi;
  if (K.digits == 2) rot_hi = detail::rotate_inputs(x.shifted, spec, lay, keys, ev0, opt.hoisting);
  res.seconds_rotate = detail::since(t0);

  t0 = detail::Clock::now();
  const std::size_t U = lay.units;
  res.out = PackedTensor{lay, spec.C_out, Packing::channels, std::vector<Ciphertext>(K.groups_out * U), {}};
  detail::for_each_unit(K.groups_out * U, opt.threads, ev, res.counts, [&](std::size_t unit, const bfv::Evaluator& e, bfv::OpCounts&) {
    const std::size_t g = unit / U, u = unit % U;
    Ciphertext out;
    bool out_empty = true;
    for (std::size_t d = 0; d < lay.diagonals(); ++d) {
      Ciphertext acc;
      bool empty = true;
      for (std::size_t a = 0; a < K.groups_in; ++a)
        for (std::size_t tap = 0; tap < spec.taps(); ++tap)
          for (int digit = 0; digit < K.digits; ++digit) {
            const auto& src = digit == 0 ? rot[a * U + u][tap] : rot_hi[a * U + u][tap];
            detail::add_into(acc, e.pmult(src, K.prepared[K.index(g, a, d, tap, digit)]), empty, e);
          }
      if (d != 0) acc = e.apply_galois(acc, lay.diagonal_element(d), keys);
      detail::add_into(out, acc, out_empty, e);
    }
    res.out.cts[unit] = std::move(out);
  });
  res.seconds_accumulate = detail::since(t0);
  return res;
}

/// Padded convolution: scalar weights, one output channel per ciphertext.
inline ConvResult conv_padded(const PackedTensor& x, const ConvKernelPadded& K, const bfv::GaloisKeySet& keys,
                              const bfv::Evaluator& ev, const ConvOptions& opt = {}) {
  const auto& lay = K.layout;
  const auto& spec = K.spec;
  const auto& rp = ev.params();
  ConvResult res;
  bfv::Evaluator ev0(ev.params(), &res.counts);
  auto t0 = detail::Clock::now();
  const auto rot = detail::rotate_inputs(x.cts, spec, lay, keys, ev0, opt.hoisting);
  res.seconds_rotate = detail::since(t0);

  t0 = detail::Clock::now();
  const std::size_t U = lay.units;
  const std::size_t groups_in = lay.groups(spec.C_in);
  res.out = PackedTensor{lay, spec.C_out, Packing::one_per_ct, std::vector<Ciphertext>(spec.C_out * U), {}};
  detail::for_each_unit(spec.C_out * U, opt.threads, ev, res.counts, [&](std::size_t unit, const bfv::Evaluator& e, bfv::OpCounts&) {
    const std::size_t o = unit / U, u = unit % U;
    Ciphertext out;
    bool out_empty = true;
    for (std::size_t j = 0; j < lay.cn; ++j) {
      Ciphertext acc;
      bool empty = true;
      for (std::size_t a = 0; a < groups_in; ++a) {
        const std::size_t c = a * lay.cn + j;
        if (c >= spec.C_in) continue;
        for (std::size_t tap = 0; tap < spec.taps(); ++tap) {
          const u64 w = rp.p.reduce(K.weights.values[(o * spec.C_in + c) * spec.taps() + tap]);
          detail::add_into(acc, e.cmult(rot[a * U + u][tap], w), empty, e);
        }
      }
      if (empty) continue;
      if (j != 0) acc = e.apply_galois(acc, lay.gather_element(j), keys);
      detail::add_into(out, acc, out_empty, e);
    }
    res.out.cts[unit] = out_empty ? detail::zero_eval(rp) : std::move(out);
  });
  res.seconds_accumulate = detail::since(t0);
  return res;
}

/// Hadamard-encoded convolution: scalar MACs per Hadamard row, one reduction per row accumulator,
/// sign-plaintext products on rows >= 1, then diagonal alignment.
inline ConvResult conv_hyena(const PackedTensor& x, const HyenaKernel& K, const bfv::GaloisKeySet& keys,
                             const bfv::Evaluator& ev, const ConvOptions& opt = {}) {
  const auto& lay = K.layout;
  const auto& spec = K.spec;
  const auto& rp = ev.params();
  ConvResult res;
  bfv::Evaluator ev0(ev.params(), &res.counts);
  auto t0 = detail::Clock::now();
  const auto rot = detail::rotate_inputs(x.cts, spec, lay, keys, ev0, opt.hoisting);
  std::vector<std::vector<Ciphertext>> neg;
  if (opt.lazy) {
    neg.resize(rot.size());
    for (std::size_t i = 0; i < rot.size(); ++i)
      for (const auto& c : rot[i]) neg[i].push_back(ev0.negate(c));
  }
  res.seconds_rotate = detail::since(t0);

  t0 = detail::Clock::now();
  const std::size_t U = lay.units;
  const std::size_t D = lay.diagonals(), R = lay.cn;
  const u64 s_max = rp.p.value() / 2;
  const std::size_t plan = K.groups_in * spec.taps();
  res.out = PackedTensor{lay, spec.C_out, Packing::channels, std::vector<Ciphertext>(K.groups_out * U), {}};
  detail::for_each_unit(K.groups_out * U, opt.threads, ev, res.counts, [&](std::size_t unit, const bfv::Evaluator& e, bfv::OpCounts& cnt) {
    const std::size_t g = unit / U, u = unit % U;
    std::vector<Ciphertext> rows(D * R);
    if (opt.lazy) {
      std::vector<modring::WideAccumulator> acc0, acc1;
      acc0.reserve(D * R);
      acc1.reserve(D * R);
      for (std::size_t i = 0; i < D * R; ++i) {
        acc0.emplace_back(rp.n, rp.q.value(), Domain::evaluation, s_max, plan);
        acc1.emplace_back(rp.n, rp.q.value(), Domain::evaluation, s_max, plan);
      }
      for (std::size_t a = 0; a < K.groups_in; ++a)
        for (std::size_t tap = 0; tap < spec.taps(); ++tap) {
          const auto& pos = rot[a * U + u][tap];
          const auto& ng = neg[a * U + u][tap];
          for (std::size_t d = 0; d < D; ++d)
            for (std::size_t r = 0; r < R; ++r) {
              const i64 s = rp.p.centered(K.scalars[K.index(g, a, d, r, tap)]);
              if (s == 0) continue;
              const auto& src = s > 0 ? pos : ng;
              const u64 mag = static_cast<u64>(s > 0 ? s : -s);
              acc0[d * R + r].lazy_mac(src.c0, mag);
              acc1[d * R + r].lazy_mac(src.c1, mag);
              ++cnt.lazy_macs;
            }
        }
      for (std::size_t i = 0; i < D * R; ++i) {
        rows[i] = Ciphertext{acc0[i].reduce(), acc1[i].reduce(), 1};
        ++cnt.reductions;
      }
    } else {
      std::vector<bool> empty(D * R, true);
      for (std::size_t a = 0; a < K.groups_in; ++a)
        for (std::size_t tap = 0; tap < spec.taps(); ++tap)
          for (std::size_t d = 0; d < D; ++d)
            for (std::size_t r = 0; r < R; ++r) {
              const u64 s = K.scalars[K.index(g, a, d, r, tap)];
              if (s == 0) continue;
              bool em = empty[d * R + r];
              detail::add_into(rows[d * R + r], e.cmult(rot[a * U + u][tap], s), em, e);
              empty[d * R + r] = em;
              ++cnt.reductions;
            }
      for (std::size_t i = 0; i < D * R; ++i)
        if (empty[i]) rows[i] = detail::zero_eval(rp);
    }
    Ciphertext out;
    bool out_empty = true;
    for (std::size_t d = 0; d < D; ++d) {
      Ciphertext partial = std::move(rows[d * R]);
      for (std::size_t r = 1; r < R; ++r) {
        const auto& sign = K.signs[r - 1];
        Ciphertext term = opt.sparse_sign && sign.is_sparse() ? e.to_eval(e.pmult_sparse(rows[d * R + r], sign.sparse))
                                                             : e.pmult(rows[d * R + r], sign.prepared);
        e.hadd_inplace(partial, term);
      }
      if (d != 0) partial = e.apply_galois(partial, lay.diagonal_element(d), keys);
      detail::add_into(out, partial, out_empty, e);
    }
    out.scale_tag = K.scale();
    res.out.cts[unit] = std::move(out);
  });
  res.seconds_accumulate = detail::since(t0);
  return res;
}

}  // namespace hyena::conv
