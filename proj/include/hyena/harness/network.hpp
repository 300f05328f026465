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
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyena/conv/convolution.hpp"

namespace hyena::harness {

struct LayerEntry {
  conv::LayerSpec spec;
  conv::Algo algo = conv::Algo::hyena;
};

/// Parses "H,W,C_in,C_out,f[,algo]".
inline LayerEntry parse_layer(const std::string& text, conv::Algo fallback = conv::Algo::hyena) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t\r");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  if (parts.size() != 5 && parts.size() != 6) throw std::invalid_argument("layer '" + text + "' needs H,W,C_in,C_out,f[,algo]");
  std::size_t v[5];
  for (int i = 0; i < 5; ++i) {
    std::size_t used = 0;
    const long long x = std::stoll(parts[i], &used);
    if (used != parts[i].size() || x <= 0) throw std::invalid_argument("bad number '" + parts[i] + "' in layer '" + text + "'");
    v[i] = static_cast<std::size_t>(x);
  }
  if (v[4] % 2 == 0) throw std::invalid_argument("filter size must be odd in layer '" + text + "'");
  return {conv::LayerSpec{v[0], v[1], v[2], v[3], v[4]}, parts.size() == 6 ? conv::parse_algo(parts[5]) : fallback};
}

inline std::vector<LayerEntry> read_network(std::istream& is) {
  std::vector<LayerEntry> out;
  for (std::string line; std::getline(is, line);) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(parse_layer(line));
  }
  return out;
}

/// A preset name resolves to <data_dir>/networks/<name>.txt; anything else is read as a path.
inline std::vector<LayerEntry> load_network(const std::string& name_or_path, const std::string& data_dir) {
  std::ifstream f(name_or_path);
  if (!f) f.open(data_dir + "/networks/" + name_or_path + ".txt");
  if (!f) throw std::runtime_error("cannot open network '" + name_or_path + "'");
  return read_network(f);
}

/// Small layers used for end-to-end verification: n in {64,128}, H=W in {4,8}, C_in, C_out in {1,2,4}, f in {1,3}.
struct MatrixCase {
  std::size_t n;
  conv::LayerSpec spec;
};

inline std::vector<MatrixCase> verification_matrix() {
  std::vector<MatrixCase> out;
  for (std::size_t n : {64u, 128u})
    for (std::size_t h : {4u, 8u})
      for (std::size_t ci : {1u, 2u, 4u})
        for (std::size_t co : {1u, 2u, 4u})
          for (std::size_t f : {1u, 3u}) out.push_back({n, conv::LayerSpec{h, h, ci, co, f}});
  return out;
}

}  // namespace hyena::harness
