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
#include <string>
#include <utility>
#include <vector>

#include "hyena/errors.hpp"
#include "hyena/modring/ntt.hpp"

namespace hyena::modring {

enum class Domain : std::uint8_t { coefficient = 0, evaluation = 1 };

inline const char* to_string(Domain d) { return d == Domain::coefficient ? "coefficient" : "evaluation"; }

/// An element of Z_m[x]/(x^n+1), either as coefficients or as NTT evaluations.
struct Polynomial {
  std::vector<u64> coeffs;
  u64 modulus = 0;
  Domain domain = Domain::coefficient;

  Polynomial() = default;
  Polynomial(std::size_t n, u64 m, Domain d = Domain::coefficient) : coeffs(n, 0), modulus(m), domain(d) {}
  Polynomial(std::vector<u64> c, u64 m, Domain d = Domain::coefficient)
      : coeffs(std::move(c)), modulus(m), domain(d) {}

  std::size_t size() const noexcept { return coeffs.size(); }
  u64& operator[](std::size_t i) { return coeffs[i]; }
  u64 operator[](std::size_t i) const { return coeffs[i]; }

  bool is_zero() const noexcept {
    for (u64 c : coeffs)
      if (c) return false;
    return true;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

inline void require_domain(const Polynomial& a, Domain d, const char* op) {
  if (a.domain != d) {
    throw DomainError(std::string(op) + ": expected " + to_string(d) + " domain, got " + to_string(a.domain));
  }
}

inline void require_compatible(const Polynomial& a, const Polynomial& b, const char* op) {
  if (a.modulus != b.modulus || a.size() != b.size()) throw ModulusMismatch(std::string(op) + ": operand mismatch");
  if (a.domain != b.domain) throw DomainError(std::string(op) + ": operands in different domains");
}

inline void require_tables(const Polynomial& a, const NttTables& t, const char* op) {
  if (a.modulus != t.modulus().value() || a.size() != t.n()) {
    throw ModulusMismatch(std::string(op) + ": tables do not match polynomial");
  }
}

inline Polynomial ntt_forward(Polynomial a, const NttTables& t) {
  require_domain(a, Domain::coefficient, "ntt_forward");
  require_tables(a, t, "ntt_forward");
  t.forward(a.coeffs.data());
  a.domain = Domain::evaluation;
  return a;
}

inline Polynomial ntt_inverse(Polynomial a, const NttTables& t) {
  require_domain(a, Domain::evaluation, "ntt_inverse");
  require_tables(a, t, "ntt_inverse");
  t.inverse(a.coeffs.data());
  a.domain = Domain::coefficient;
  return a;
}

}  // namespace hyena::modring
