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
#include <ostream>

namespace hyena::bfv {

/// Homomorphic operation tallies.
struct OpCounts {
  std::size_t decompositions = 0;
  std::size_t rotations = 0;
  std::size_t pmults = 0;
  std::size_t cmults = 0;
  std::size_t lazy_macs = 0;
  std::size_t reductions = 0;
  std::size_t hadds = 0;

  OpCounts& operator+=(const OpCounts& o) {
    decompositions += o.decompositions;
    rotations += o.rotations;
    pmults += o.pmults;
    cmults += o.cmults;
    lazy_macs += o.lazy_macs;
    reductions += o.reductions;
    hadds += o.hadds;
    return *this;
  }

  friend bool operator==(const OpCounts&, const OpCounts&) = default;

  friend std::ostream& operator<<(std::ostream& os, const OpCounts& c) {
    return os << "decompositions=" << c.decompositions << " rotations=" << c.rotations << " pmults=" << c.pmults
              << " cmults=" << c.cmults << " lazy_macs=" << c.lazy_macs << " reductions=" << c.reductions
              << " hadds=" << c.hadds;
  }
};

}  // namespace hyena::bfv
