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
#include <stdexcept>
#include <string>
#include <vector>

#include "hyena/bfv/encryptor.hpp"
#include "hyena/bfv/galois.hpp"
#include "hyena/modring/number_theory.hpp"
#include "hyena/oracle/tensor.hpp"

namespace hyena::conv {

using bfv::Ciphertext;

/// Convolution layer shape: H x W feature maps, C_in -> C_out channels, f x f filters, stride 1.
struct LayerSpec {
  std::size_t H = 0, W = 0, C_in = 0, C_out = 0, f = 3;

  std::size_t r() const noexcept { return f / 2; }
  std::size_t taps() const noexcept { return f * f; }

  std::string str() const {
    return std::to_string(H) + "x" + std::to_string(W) + " " + std::to_string(C_in) + "->" + std::to_string(C_out) +
           " f" + std::to_string(f);
  }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Placement of feature maps into the 2 x (n/2) slot matrix.
///
/// A map is cut into tiles of L = min(HW, n/2) slots. Tiles occupy blocks of a slot row; when c_n > 1 each
/// block holds one whole channel and a ciphertext packs c_n channels, otherwise each slot row holds one tile.
struct Layout {
  std::size_t n = 0, H = 0, W = 0, HW = 0;
  std::size_t cn = 1;          // channels per ciphertext
  std::size_t L = 0;           // block length
  std::size_t blocks = 0;      // blocks per ciphertext
  std::size_t bpr = 0;         // blocks per slot row
  std::size_t tiles = 1;       // tiles per channel
  std::size_t rows = 0;        // image rows per tile
  std::size_t units = 1;       // ciphertexts per channel group

  Layout() = default;
  Layout(std::size_t degree, std::size_t height, std::size_t width) : n(degree), H(height), W(width), HW(height * width) {
    if (!modring::is_power_of_two(W) || !modring::is_power_of_two(H)) {
      throw std::invalid_argument("feature map sides must be powers of two after padding");
    }
    if (HW > n && HW % n != 0) throw std::invalid_argument("H*W must divide n or be a multiple of n");
    cn = HW >= n ? 1 : n / HW;
    L = std::min(HW, n / 2);
    blocks = n / L;
    bpr = (n / 2) / L;
    tiles = HW / L;
    rows = L / W;
    units = cn > 1 ? 1 : tiles / blocks;
    if (rows == 0) throw std::invalid_argument("a feature-map row does not fit in half a slot row");
  }

  std::size_t row_size() const noexcept { return n / 2; }
  bool tiled() const noexcept { return tiles > 1; }

  /// Number of channel groups (ciphertexts per spatial unit) for C channels.
  std::size_t groups(std::size_t C) const noexcept { return (C + cn - 1) / cn; }
  std::size_t ciphertexts(std::size_t C) const noexcept { return groups(C) * units; }

  /// Slot of local position (y, x) within block b.
  std::size_t slot(std::size_t block, std::size_t y_local, std::size_t x) const {
    return (block / bpr) * row_size() + (block % bpr) * L + y_local * W + x;
  }

  struct Place {
    std::size_t ct, slot;
  };

  /// Ciphertext and slot of pixel (c, y, x).
  Place place(std::size_t c, std::size_t y, std::size_t x) const {
    const std::size_t t = y / rows;
    const std::size_t idx = cn > 1 ? c : c * tiles + t;
    return Place{idx / blocks, slot(idx % blocks, y % rows, x)};
  }

  /// Pixels whose f x f neighbourhood lies inside their tile.
  bool interior(std::size_t y, std::size_t x, std::size_t r) const {
    const std::size_t yl = y % rows;
    return yl >= r && yl + r < rows && x >= r && x + r < W;
  }

  /// Block permutation pi_d(rho, b) = (rho ^ d_rho, b + d_b mod bpr) for diagonal d in [0, cn).
  std::size_t diagonal_target(std::size_t d, std::size_t j) const {
    if (cn == 1) return j;
    const std::size_t rho = j / bpr, b = j % bpr;
    const std::size_t d_rho = d / bpr, d_b = d % bpr;
    return (rho ^ d_rho) * bpr + (b + d_b) % bpr;
  }

  std::size_t diagonals() const noexcept { return cn; }

  /// Galois element moving every block j to diagonal_target(d, j).
  u64 diagonal_element(std::size_t d) const {
    const std::size_t d_rho = d / bpr, d_b = d % bpr;
    u64 g = bfv::rotation_element(n, -static_cast<long>(d_b * L));
    if (d_rho) g = bfv::compose_elements(n, g, bfv::row_swap_element(n));
    return g;
  }

  /// Galois element moving block j to block 0.
  u64 gather_element(std::size_t j) const {
    const std::size_t rho = j / bpr, b = j % bpr;
    u64 g = bfv::rotation_element(n, static_cast<long>(b * L));
    if (rho) g = bfv::compose_elements(n, g, bfv::row_swap_element(n));
    return g;
  }
};

/// Left-rotation step bringing tap (dy, dx) of the f x f window onto the output position.
inline long tap_step(const Layout& lay, std::size_t f, std::size_t tap) {
  const long r = static_cast<long>(f / 2);
  const long dy = static_cast<long>(tap / f) - r, dx = static_cast<long>(tap % f) - r;
  return dy * static_cast<long>(lay.W) + dx;
}

enum class Packing { channels, one_per_ct };

/// Encrypted feature map. `shifted` holds encryptions of 2^w * x when plaintext decomposition is used.
struct PackedTensor {
  Layout layout;
  std::size_t channels = 0;
  Packing packing = Packing::channels;
  std::vector<Ciphertext> cts;
  std::vector<Ciphertext> shifted;

  std::size_t digits() const noexcept { return shifted.empty() ? 1 : 2; }
};

/// Plaintext slot vectors for each ciphertext of a C x H x W tensor.
inline std::vector<std::vector<u64>> pack_slots(const PlainTensor& x, const Layout& lay) {
  std::vector<std::vector<u64>> slots(lay.ciphertexts(x.C), std::vector<u64>(lay.n, 0));
  for (std::size_t c = 0; c < x.C; ++c)
    for (std::size_t y = 0; y < x.H; ++y)
      for (std::size_t xx = 0; xx < x.W; ++xx) {
        const auto pl = lay.place(c, y, xx);
        slots[pl.ct][pl.slot] = x.at(c, y, xx);
      }
  return slots;
}

/// Encrypts a tensor; with digits = 2 the client also sends Enc(2^w * x).
inline PackedTensor pack_tensor(const PlainTensor& x, const Layout& lay, const bfv::BatchEncoder& encoder,
                                bfv::Encryptor& encryptor, int digits = 1, int w_bits = 0) {
  if (x.H != lay.H || x.W != lay.W) throw std::invalid_argument("tensor does not match layout");
  const auto& p = encoder.params().p;
  PackedTensor out{lay, x.C, Packing::channels, {}, {}};
  for (auto& s : pack_slots(x, lay)) {
    out.cts.push_back(encryptor.encrypt(encoder.encode(s)));
    if (digits == 2) {
      const u64 shift = p.pow(2, static_cast<u64>(w_bits));
      for (auto& v : s) v = p.mul(v, shift);
      out.shifted.push_back(encryptor.encrypt(encoder.encode(s)));
    }
  }
  return out;
}

/// Decrypts, removes the scale tag and gathers channels back into a tensor.
inline PlainTensor unpack_output(const PackedTensor& y, const bfv::Decryptor& decryptor, const bfv::BatchEncoder& encoder) {
  const auto& lay = y.layout;
  const auto& p = encoder.params().p;
  PlainTensor out(y.channels, lay.H, lay.W);
  std::vector<std::vector<u64>> slots;
  for (const auto& ct : y.cts) {
    auto s = encoder.decode(decryptor.decrypt(ct));
    const u64 inv = p.inverse(p.reduce(ct.scale_tag));
    for (auto& v : s) v = p.mul(v, inv);
    slots.push_back(std::move(s));
  }
  for (std::size_t c = 0; c < y.channels; ++c)
    for (std::size_t yy = 0; yy < lay.H; ++yy)
      for (std::size_t x = 0; x < lay.W; ++x) {
        auto pl = lay.place(c, yy, x);
        if (y.packing == Packing::one_per_ct && lay.cn > 1) pl = Layout::Place{c, lay.slot(0, yy, x)};
        out.at(c, yy, x) = slots.at(pl.ct)[pl.slot];
      }
  return out;
}

}  // namespace hyena::conv
