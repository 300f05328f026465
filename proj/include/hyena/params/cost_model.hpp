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
#include <string>
#include <vector>

#include "hyena/bfv/galois.hpp"
#include "hyena/bfv/serialization.hpp"
#include "hyena/conv/convolution.hpp"

namespace hyena::params {

using conv::Algo;
using conv::LayerSpec;

struct CostReport {
  LayerSpec spec;
  Algo algo = Algo::hyena;
  std::size_t n = 0;
  int digits = 1;
  int base_bits = 20;
  std::size_t plaintexts = 0;
  std::size_t scalars = 0;
  std::size_t model_bytes = 0;          // stored form: framed plaintexts, or scalars
  std::size_t model_payload_bytes = 0;  // raw coefficients, plus sign polynomials for hyena
  std::size_t input_cts = 0;
  std::size_t input_bytes = 0;
  std::size_t key_elements = 0;
  std::size_t key_bytes = 0;
};

inline CostReport cost_model(const LayerSpec& spec, Algo algo, std::size_t n, int q_bits = 60, int base_bits = 20,
                             int digits = 1) {
  const conv::Layout lay(n, spec.H, spec.W);
  CostReport r;
  r.spec = spec;
  r.algo = algo;
  r.n = n;
  r.digits = algo == Algo::conventional ? digits : 1;
  r.base_bits = base_bits;
  const std::size_t weights = spec.taps() * spec.C_in * spec.C_out;
  switch (algo) {
    case Algo::conventional:
      r.plaintexts = lay.groups(spec.C_out) * lay.groups(spec.C_in) * lay.diagonals() * spec.taps() * r.digits;
      r.model_bytes = r.plaintexts * bfv::serial::plaintext_bytes(n);
      r.model_payload_bytes = r.plaintexts * n * 8;
      break;
    case Algo::padded:
      r.scalars = weights;
      r.model_bytes = r.model_payload_bytes = weights * 8;
      break;
    case Algo::hyena:
      r.scalars = weights;
      r.model_bytes = weights * 8;
      r.model_payload_bytes = weights * 8 + (lay.cn - 1) * n * 8;
      break;
  }
  r.input_cts = lay.ciphertexts(spec.C_in) * static_cast<std::size_t>(r.digits);
  r.input_bytes = r.input_cts * 2 * n * 8;
  r.key_elements = conv::required_elements(algo, spec, lay).size();
  r.key_bytes = r.key_elements * 2 * n * 8 * static_cast<std::size_t>(bfv::digit_count(q_bits, base_bits));
  return r;
}

inline double mib(std::size_t bytes) { return static_cast<double>(bytes) / (1024.0 * 1024.0); }
inline double kib(std::size_t bytes) { return static_cast<double>(bytes) / 1024.0; }

/// Two decimals below 100, whole numbers above; halves round up; trailing zeros dropped.
inline std::string format_size(double v) {
  const bool whole = v >= 100.0;
  const double scale = whole ? 1.0 : 100.0;
  const auto units = static_cast<long long>(std::floor(v * scale + 0.5));
  std::string s = std::to_string(units / static_cast<long long>(scale));
  if (!whole) {
    const long long frac = units % 100;
    if (frac != 0) {
      s += '.';
      s += static_cast<char>('0' + frac / 10);
      if (frac % 10 != 0) s += static_cast<char>('0' + frac % 10);
    }
  }
  return s;
}

struct Table2Row {
  LayerSpec spec;
  std::size_t n = 0;
  CostReport conventional;
  CostReport hyena;
  double model_ratio() const { return static_cast<double>(conventional.model_payload_bytes) / static_cast<double>(hyena.scalars * 8); }
  double input_ratio() const { return static_cast<double>(conventional.input_bytes) / static_cast<double>(hyena.input_bytes); }
};

/// Ring degree used for a feature map of side h.
inline std::size_t table2_degree(std::size_t h) { return h == 64 ? 4096 : 2048; }

inline std::vector<Table2Row> table2(int q_bits = 60, int base_bits = 20) {
  const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> shapes = {
      {32, 64, 128},  {32, 128, 128}, {32, 256, 512},  {32, 512, 512},  {64, 64, 64},   {64, 128, 256},
      {64, 256, 256}, {128, 64, 128}, {128, 128, 128}, {256, 3, 64},    {256, 64, 64}};
  std::vector<Table2Row> rows;
  for (auto [h, ci, co] : shapes) {
    Table2Row row;
    row.spec = LayerSpec{h, h, ci, co, 3};
    row.n = table2_degree(h);
    row.conventional = cost_model(row.spec, Algo::conventional, row.n, q_bits, base_bits, 2);
    row.hyena = cost_model(row.spec, Algo::hyena, row.n, q_bits, base_bits, 1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hyena::params
