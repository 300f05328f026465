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

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hyena/bfv/encoder.hpp"
#include "hyena/bfv/galois.hpp"

namespace hyena::bfv::serial {

inline constexpr std::array<char, 4> kMagic{'H', 'Y', 'N', 'A'};
inline constexpr std::uint32_t kVersion = 1;

enum class Kind : std::uint32_t { plaintext = 1, ciphertext = 2, galois_keys = 3 };

inline void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

inline std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("serialized stream truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("serialized stream truncated");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline void put_poly(std::ostream& os, const Polynomial& a) {
  for (u64 c : a.coeffs) put_u64(os, c);
}

inline Polynomial get_poly(std::istream& is, std::size_t n, u64 modulus, Domain d) {
  Polynomial a(n, modulus, d);
  for (auto& c : a.coeffs) {
    c = get_u64(is);
    if (c >= modulus) throw std::runtime_error("serialized coefficient out of range");
  }
  return a;
}

/// Common header: magic, version, kind, n, modulus, domain flags, W, element list.
struct Header {
  Kind kind{};
  std::uint64_t n = 0;
  std::uint64_t modulus = 0;
  std::uint32_t domain_flags = 0;
  std::uint32_t base_bits = 0;
  std::vector<std::uint64_t> elements;

  std::size_t bytes() const { return 4 + 4 + 4 + 8 + 8 + 4 + 4 + 8 + 8 * elements.size(); }
};

inline void write_header(std::ostream& os, const Header& h) {
  os.write(kMagic.data(), 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(h.kind));
  put_u64(os, h.n);
  put_u64(os, h.modulus);
  put_u32(os, h.domain_flags);
  put_u32(os, h.base_bits);
  put_u64(os, h.elements.size());
  for (auto e : h.elements) put_u64(os, e);
}

inline Header read_header(std::istream& is, Kind expected) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kMagic) throw std::runtime_error("bad magic");
  if (get_u32(is) != kVersion) throw std::runtime_error("unsupported version");
  Header h;
  h.kind = static_cast<Kind>(get_u32(is));
  if (h.kind != expected) throw std::runtime_error("unexpected object kind");
  h.n = get_u64(is);
  h.modulus = get_u64(is);
  h.domain_flags = get_u32(is);
  h.base_bits = get_u32(is);
  const auto count = get_u64(is);
  if (count > (1u << 20)) throw std::runtime_error("element list too long");
  h.elements.resize(count);
  for (auto& e : h.elements) e = get_u64(is);
  return h;
}

/// Compact plaintext record: tag, n, domain flag, then coefficients. The modulus comes from the enclosing file.
inline constexpr std::array<char, 4> kPlainTag{'H', 'Y', 'P', 'T'};
inline constexpr std::size_t kPlaintextRecordHeader = 12;

inline void write(std::ostream& os, const Plaintext& pt) {
  os.write(kPlainTag.data(), 4);
  put_u32(os, static_cast<std::uint32_t>(pt.poly.size()));
  put_u32(os, static_cast<std::uint32_t>(pt.poly.domain));
  put_poly(os, pt.poly);
}

inline Plaintext read_plaintext(std::istream& is, u64 modulus) {
  std::array<char, 4> tag{};
  if (!is.read(tag.data(), 4) || tag != kPlainTag) throw std::runtime_error("bad plaintext record tag");
  const auto n = get_u32(is);
  const auto flags = get_u32(is);
  return Plaintext{get_poly(is, n, modulus, static_cast<Domain>(flags & 1))};
}

/// Ciphertext header stores the scale tag in the element list.
inline void write(std::ostream& os, const Ciphertext& ct) {
  const std::uint32_t flags = static_cast<std::uint32_t>(ct.c0.domain) | (static_cast<std::uint32_t>(ct.c1.domain) << 1);
  write_header(os, Header{Kind::ciphertext, ct.n(), ct.c0.modulus, flags, 0, {ct.scale_tag}});
  put_poly(os, ct.c0);
  put_poly(os, ct.c1);
}

inline Ciphertext read_ciphertext(std::istream& is) {
  const auto h = read_header(is, Kind::ciphertext);
  if (h.elements.size() != 1) throw std::runtime_error("ciphertext header lacks scale tag");
  Ciphertext ct;
  ct.c0 = get_poly(is, h.n, h.modulus, static_cast<Domain>(h.domain_flags & 1));
  ct.c1 = get_poly(is, h.n, h.modulus, static_cast<Domain>((h.domain_flags >> 1) & 1));
  ct.scale_tag = h.elements[0];
  return ct;
}

inline Header header_of(const GaloisKeySet& keys) {
  return Header{Kind::galois_keys, keys.n(), keys.q(), static_cast<std::uint32_t>(Domain::evaluation),
                static_cast<std::uint32_t>(keys.base_bits()), keys.elements()};
}

inline void write(std::ostream& os, const GaloisKeySet& keys) {
  write_header(os, header_of(keys));
  for (u64 g : keys.elements()) {
    for (const auto& kp : keys.key(g)) {
      put_poly(os, kp.b);
      put_poly(os, kp.a);
    }
  }
}

/// Permutation tables are rebuilt from the ring parameters.
inline GaloisKeySet read_galois_keys(std::istream& is, const RingParams& params) {
  const auto h = read_header(is, Kind::galois_keys);
  if (h.n != params.n || h.modulus != params.q.value()) throw std::runtime_error("key set does not match ring");
  GaloisKeySet keys(params, static_cast<int>(h.base_bits));
  for (u64 g : h.elements) {
    std::vector<KeyPair> pairs;
    for (int i = 0; i < keys.digits(); ++i) {
      auto b = get_poly(is, h.n, h.modulus, Domain::evaluation);
      auto a = get_poly(is, h.n, h.modulus, Domain::evaluation);
      pairs.push_back(KeyPair{std::move(b), std::move(a)});
    }
    keys.insert(g, std::move(pairs), *params.ntt_q);
  }
  return keys;
}

inline std::size_t plaintext_bytes(std::size_t n) { return kPlaintextRecordHeader + 8 * n; }

inline std::size_t ciphertext_bytes(std::size_t n) { return Header{Kind::ciphertext, n, 0, 0, 0, {1}}.bytes() + 16 * n; }

inline std::size_t galois_keys_bytes(const GaloisKeySet& keys) { return header_of(keys).bytes() + keys.payload_bytes(); }

}  // namespace hyena::bfv::serial
