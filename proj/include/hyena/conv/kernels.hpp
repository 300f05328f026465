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
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyena/bfv/serialization.hpp"
#include "hyena/conv/hadamard.hpp"
#include "hyena/conv/layout.hpp"

namespace hyena::conv {

/// Digit width for plaintext decomposition: ceil(bits(p) / 2).
inline int decomposition_bits(u64 p) { return (std::bit_width(p) + 1) / 2; }

/// Zero-masked diagonal plaintexts indexed [group][input ct group][diagonal][tap][digit].
struct ConvKernelConventional {
  LayerSpec spec;
  Layout layout;
  int digits = 1;
  int w_bits = 0;
  std::size_t groups_out = 0, groups_in = 0;
  std::vector<bfv::Plaintext> plain;
  std::vector<bfv::PreparedPlaintext> prepared;

  std::size_t index(std::size_t g, std::size_t a, std::size_t d, std::size_t tap, int digit) const {
    return (((g * groups_in + a) * layout.diagonals() + d) * spec.taps() + tap) * digits + digit;
  }
  std::size_t count() const noexcept { return plain.size(); }
  std::size_t storage_bytes() const noexcept { return count() * layout.n * 8; }
};

/// Raw scalars k[o][c][tap].
struct ConvKernelPadded {
  LayerSpec spec;
  Layout layout;
  Kernel weights;

  std::size_t count() const noexcept { return weights.values.size(); }
  std::size_t storage_bytes() const noexcept { return count() * 8; }
};

/// Hadamard-encoded scalars indexed [group][input ct group][diagonal][row][tap] plus sign plaintexts for rows >= 1.
struct HyenaKernel {
  LayerSpec spec;
  Layout layout;
  u64 k = 1;
  std::size_t groups_out = 0, groups_in = 0;
  std::vector<u64> scalars;
  std::vector<SignPlaintext> signs;  // signs[r - 1]

  u64 scale() const noexcept { return layout.cn * k; }
  std::size_t index(std::size_t g, std::size_t a, std::size_t d, std::size_t r, std::size_t tap) const {
    return (((g * groups_in + a) * layout.diagonals() + d) * layout.cn + r) * spec.taps() + tap;
  }
  std::size_t count() const noexcept { return scalars.size(); }
  std::size_t storage_bytes() const noexcept { return count() * 8 + signs.size() * layout.n * 8; }
};

inline void check_kernel(const Kernel& kernel, const LayerSpec& spec) {
  if (kernel.C_out != spec.C_out || kernel.C_in != spec.C_in || kernel.f != spec.f) {
    throw std::invalid_argument("kernel shape does not match layer " + spec.str());
  }
  if (spec.f % 2 == 0) throw std::invalid_argument("filter size must be odd");
}

/// Kernel weight for block j of diagonal d, or zero when the channel does not exist.
inline u64 diagonal_weight(const Kernel& kernel, const Layout& lay, std::size_t g, std::size_t a, std::size_t d,
                           std::size_t j, std::size_t tap) {
  const std::size_t o = lay.cn == 1 ? g : g * lay.cn + lay.diagonal_target(d, j);
  const std::size_t c = lay.cn == 1 ? a : a * lay.cn + j;
  if (o >= kernel.C_out || c >= kernel.C_in) return 0;
  return kernel.values[(o * kernel.C_in + c) * kernel.f * kernel.f + tap];
}

inline ConvKernelConventional encode_kernel_conventional(const Kernel& kernel, const LayerSpec& spec, const Layout& lay,
                                                         const bfv::BatchEncoder& encoder, int digits = 1) {
  check_kernel(kernel, spec);
  if (digits != 1 && digits != 2) throw std::invalid_argument("plaintext decomposition supports 1 or 2 digits");
  const auto& p = encoder.params().p;
  ConvKernelConventional K;
  K.spec = spec;
  K.layout = lay;
  K.digits = digits;
  K.w_bits = decomposition_bits(p.value());
  K.groups_out = lay.groups(spec.C_out);
  K.groups_in = lay.groups(spec.C_in);
  const std::size_t total = K.groups_out * K.groups_in * lay.diagonals() * spec.taps() * digits;
  K.plain.resize(total);
  K.prepared.resize(total);
  const long r = static_cast<long>(spec.r());
  const i64 base = i64{1} << K.w_bits;
  std::vector<u64> slots(lay.n);
  for (std::size_t g = 0; g < K.groups_out; ++g)
    for (std::size_t a = 0; a < K.groups_in; ++a)
      for (std::size_t d = 0; d < lay.diagonals(); ++d)
        for (std::size_t tap = 0; tap < spec.taps(); ++tap) {
          const long dy = static_cast<long>(tap / spec.f) - r, dx = static_cast<long>(tap % spec.f) - r;
          std::fill(slots.begin(), slots.end(), 0);
          for (std::size_t j = 0; j < lay.blocks; ++j) {
            const u64 w = p.reduce(diagonal_weight(kernel, lay, g, a, d, j, tap));
            if (w == 0) continue;
            for (std::size_t yl = 0; yl < lay.rows; ++yl) {
              const long sy = static_cast<long>(yl) + dy;
              if (sy < 0 || sy >= static_cast<long>(lay.rows)) continue;
              for (std::size_t x = 0; x < lay.W; ++x) {
                const long sx = static_cast<long>(x) + dx;
                if (sx < 0 || sx >= static_cast<long>(lay.W)) continue;
                slots[lay.slot(j, yl, x)] = w;
              }
            }
          }
          const auto pt = encoder.encode(slots);
          if (digits == 1) {
            const auto at = K.index(g, a, d, tap, 0);
            K.plain[at] = pt;
            K.prepared[at] = encoder.prepare(pt);
            continue;
          }
          bfv::Plaintext lo{modring::Polynomial(lay.n, p.value())}, hi{modring::Polynomial(lay.n, p.value())};
          for (std::size_t i = 0; i < lay.n; ++i) {
            const i64 c = p.centered(pt.poly[i]);
            i64 w0 = c & (base - 1);
            if (w0 >= base / 2) w0 -= base;
            lo.poly[i] = p.from_signed(w0);
            hi.poly[i] = p.from_signed((c - w0) / base);
          }
          K.plain[K.index(g, a, d, tap, 0)] = lo;
          K.prepared[K.index(g, a, d, tap, 0)] = encoder.prepare(lo);
          K.plain[K.index(g, a, d, tap, 1)] = hi;
          K.prepared[K.index(g, a, d, tap, 1)] = encoder.prepare(hi);
        }
  return K;
}

inline ConvKernelPadded encode_kernel_padded(const Kernel& kernel, const LayerSpec& spec, const Layout& lay) {
  check_kernel(kernel, spec);
  return ConvKernelPadded{spec, lay, kernel};
}

/// Scalars s_r = (row-0 ? k : 1) * sum_j H[r][j] * v_j per (group, input group, diagonal, tap).
inline HyenaKernel encode_kernel_hyena(const Kernel& kernel, const LayerSpec& spec, const Layout& lay,
                                       const bfv::BatchEncoder& encoder, u64 k = 1) {
  check_kernel(kernel, spec);
  if (k < 1) throw std::invalid_argument("k must be positive");
  const auto& p = encoder.params().p;
  HyenaKernel K;
  K.spec = spec;
  K.layout = lay;
  K.k = lay.cn == 1 ? 1 : k;
  K.groups_out = lay.groups(spec.C_out);
  K.groups_in = lay.groups(spec.C_in);
  const auto h = hadamard(lay.cn);
  K.scalars.resize(K.groups_out * K.groups_in * lay.diagonals() * lay.cn * spec.taps());
  for (std::size_t g = 0; g < K.groups_out; ++g)
    for (std::size_t a = 0; a < K.groups_in; ++a)
      for (std::size_t d = 0; d < lay.diagonals(); ++d)
        for (std::size_t tap = 0; tap < spec.taps(); ++tap)
          for (std::size_t r = 0; r < lay.cn; ++r) {
            u64 s = 0;
            for (std::size_t j = 0; j < lay.cn; ++j) {
              const u64 v = p.reduce(diagonal_weight(kernel, lay, g, a, d, j, tap));
              s = h[r][j] > 0 ? p.add(s, v) : p.sub(s, v);
            }
            if (r == 0) s = p.mul(s, K.k);
            K.scalars[K.index(g, a, d, r, tap)] = s;
          }
  for (std::size_t r = 1; r < lay.cn; ++r) K.signs.push_back(make_sign_plaintext(lay, r, K.k, encoder));
  return K;
}

/// Kernel file: magic, layer spec, algorithm, digits, k, c_n, n, p, then little-endian payload.
namespace kernel_file {

inline constexpr char kMagic[4] = {'H', 'Y', 'K', 'F'};

enum class Algo : std::uint32_t { conventional = 0, padded = 1, hyena = 2 };

struct Header {
  LayerSpec spec;
  Algo algo{};
  std::uint32_t digits = 1;
  u64 k = 1;
  u64 cn = 1;
  u64 n = 0;
  u64 p = 0;
  u64 count = 0;
};

inline void write_header(std::ostream& os, const Header& h) {
  os.write(kMagic, 4);
  for (u64 v : {u64(h.spec.H), u64(h.spec.W), u64(h.spec.C_in), u64(h.spec.C_out), u64(h.spec.f)}) bfv::serial::put_u64(os, v);
  bfv::serial::put_u32(os, static_cast<std::uint32_t>(h.algo));
  bfv::serial::put_u32(os, h.digits);
  for (u64 v : {h.k, h.cn, h.n, h.p, h.count}) bfv::serial::put_u64(os, v);
}

inline Header read_header(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4)) throw std::runtime_error("bad kernel file magic");
  Header h;
  h.spec.H = bfv::serial::get_u64(is);
  h.spec.W = bfv::serial::get_u64(is);
  h.spec.C_in = bfv::serial::get_u64(is);
  h.spec.C_out = bfv::serial::get_u64(is);
  h.spec.f = bfv::serial::get_u64(is);
  h.algo = static_cast<Algo>(bfv::serial::get_u32(is));
  h.digits = bfv::serial::get_u32(is);
  h.k = bfv::serial::get_u64(is);
  h.cn = bfv::serial::get_u64(is);
  h.n = bfv::serial::get_u64(is);
  h.p = bfv::serial::get_u64(is);
  h.count = bfv::serial::get_u64(is);
  return h;
}

inline void write(std::ostream& os, const ConvKernelConventional& K, u64 p) {
  write_header(os, Header{K.spec, Algo::conventional, static_cast<std::uint32_t>(K.digits), 1, K.layout.cn, K.layout.n, p, K.count()});
  for (const auto& pt : K.plain) bfv::serial::write(os, pt);
}

inline void write(std::ostream& os, const ConvKernelPadded& K, u64 p) {
  write_header(os, Header{K.spec, Algo::padded, 1, 1, K.layout.cn, K.layout.n, p, K.count()});
  for (u64 v : K.weights.values) bfv::serial::put_u64(os, v);
}

inline void write(std::ostream& os, const HyenaKernel& K, u64 p) {
  write_header(os, Header{K.spec, Algo::hyena, 1, K.k, K.layout.cn, K.layout.n, p, K.count()});
  for (u64 v : K.scalars) bfv::serial::put_u64(os, v);
  for (const auto& s : K.signs) bfv::serial::write(os, s.pt);
}

inline std::vector<u64> read_scalars(std::istream& is, const Header& h) {
  std::vector<u64> v(h.count);
  for (auto& x : v) x = bfv::serial::get_u64(is);
  return v;
}

}  // namespace kernel_file

}  // namespace hyena::conv
