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

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hyena/bfv/encoder.hpp"
#include "hyena/conv/layout.hpp"

namespace hyena::conv {

/// Sylvester-construction Walsh-Hadamard matrix: H[r][j] = (-1)^popcount(r & j).
inline std::vector<std::vector<int>> hadamard(std::size_t m) {
  if (!modring::is_power_of_two(m)) throw std::invalid_argument("Hadamard order must be a power of two");
  std::vector<std::vector<int>> h(m, std::vector<int>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < m; ++j) h[r][j] = (std::popcount(r & j) & 1) ? -1 : 1;
  return h;
}

/// Hadamard row pattern k * H[r][j] spread over block j of every slot row.
struct SignPlaintext {
  bfv::Plaintext pt;
  bfv::PreparedPlaintext prepared;
  std::vector<modring::SparseTerm> sparse;  // centered lift into Z_q

  bool is_sparse() const noexcept { return !sparse.empty(); }
};

inline constexpr std::size_t kSparseTermLimit = 8;

inline SignPlaintext make_sign_plaintext(const Layout& lay, std::size_t r, u64 k, const bfv::BatchEncoder& encoder) {
  const auto& rp = encoder.params();
  const auto h = hadamard(lay.cn);
  std::vector<u64> slots(lay.n);
  for (std::size_t j = 0; j < lay.blocks; ++j)
    for (std::size_t i = 0; i < lay.L; ++i) {
      const i64 v = static_cast<i64>(k % rp.p.value()) * h[r][j];
      slots[lay.slot(j, 0, 0) + i] = rp.p.from_signed(v);
    }
  SignPlaintext s;
  s.pt = encoder.encode(slots);
  s.prepared = encoder.prepare(s.pt);
  std::size_t nonzero = 0;
  for (u64 c : s.pt.poly.coeffs) nonzero += c != 0;
  if (nonzero <= kSparseTermLimit) {
    for (std::size_t i = 0; i < lay.n; ++i)
      if (s.pt.poly[i]) s.sparse.push_back({i, rp.q.from_signed(rp.p.centered(s.pt.poly[i]))});
  }
  return s;
}

}  // namespace hyena::conv
