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
#include <vector>

#include "hyena/modring/polynomial.hpp"

namespace hyena::modring {

/// One nonzero term value * x^index of a sparse polynomial.
struct SparseTerm {
  std::size_t index = 0;
  u64 value = 0;
};

inline Polynomial add(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "add");
  const Modulus m(a.modulus);
  Polynomial r(a.size(), a.modulus, a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.add(a[i], b[i]);
  return r;
}

inline void add_inplace(Polynomial& a, const Polynomial& b, const Modulus& m) {
  require_compatible(a, b, "add");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = m.add(a[i], b[i]);
}

inline Polynomial sub(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "sub");
  const Modulus m(a.modulus);
  Polynomial r(a.size(), a.modulus, a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.sub(a[i], b[i]);
  return r;
}

inline Polynomial negate(const Polynomial& a) {
  const Modulus m(a.modulus);
  Polynomial r(a.size(), a.modulus, a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.neg(a[i]);
  return r;
}

inline Polynomial scalar_mul(const Polynomial& a, u64 s, const Modulus& m) {
  Polynomial r(a.size(), a.modulus, a.domain);
  s = m.reduce(s);
  const u64 ss = m.shoup(s);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.mul_shoup(a[i], s, ss);
  return r;
}

inline Polynomial pointwise_mul(const Polynomial& a, const Polynomial& b) {
  require_compatible(a, b, "pointwise_mul");
  require_domain(a, Domain::evaluation, "pointwise_mul");
  const Modulus m(a.modulus);
  Polynomial r(a.size(), a.modulus, a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = m.mul(a[i], b[i]);
  return r;
}

/// Negacyclic product. Coefficient inputs give a coefficient result; evaluation inputs multiply pointwise.
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, const NttTables& t) {
  require_compatible(a, b, "poly_mul");
  require_tables(a, t, "poly_mul");
  if (a.domain == Domain::evaluation) return pointwise_mul(a, b);
  return ntt_inverse(pointwise_mul(ntt_forward(a, t), ntt_forward(b, t)), t);
}

/// a * x^k in Z_m[x]/(x^n+1) for 0 <= k < n.
inline Polynomial monomial_shift(const Polynomial& a, std::size_t k) {
  require_domain(a, Domain::coefficient, "monomial_shift");
  const std::size_t n = a.size();
  if (k >= n) throw std::out_of_range("monomial_shift: index >= n");
  const Modulus m(a.modulus);
  Polynomial r(n, a.modulus, Domain::coefficient);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + k;
    if (j < n) r[j] = a[i];
    else r[j - n] = m.neg(a[i]);
  }
  return r;
}

inline Polynomial densify(const std::vector<SparseTerm>& sparse, std::size_t n, u64 modulus) {
  Polynomial d(n, modulus, Domain::coefficient);
  const Modulus m(modulus);
  for (const auto& term : sparse) {
    if (term.index >= n) throw std::out_of_range("densify: index >= n");
    d[term.index] = m.add(d[term.index], m.reduce(term.value));
  }
  return d;
}

/// Product with a sparse polynomial as a sum of scaled negacyclic shifts.
inline Polynomial sparse_mul(const Polynomial& a, const std::vector<SparseTerm>& sparse) {
  require_domain(a, Domain::coefficient, "sparse_mul");
  const std::size_t n = a.size();
  const Modulus m(a.modulus);
  Polynomial r(n, a.modulus, Domain::coefficient);
  for (const auto& term : sparse) {
    if (term.index >= n) throw std::out_of_range("sparse_mul: index >= n");
    const u64 v = m.reduce(term.value);
    const u64 vs = m.shoup(v);
    const u64 nv = m.neg(v);
    const u64 nvs = m.shoup(nv);
    const std::size_t k = term.index;
    for (std::size_t i = 0; i + k < n; ++i) r[i + k] = m.add(r[i + k], m.mul_shoup(a[i], v, vs));
    for (std::size_t i = n - k; i < n; ++i) r[i + k - n] = m.add(r[i + k - n], m.mul_shoup(a[i], nv, nvs));
  }
  return r;
}

}  // namespace hyena::modring
