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

#include <stdexcept>
#include <string>

namespace hyena {

/// Operand in the wrong representation (coefficient vs evaluation).
struct DomainError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Operands defined over different moduli or ring degrees.
struct ModulusMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A lazy accumulation plan that could exceed the 120-bit accumulator bound.
struct CapacityError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Rotation requested for a Galois element with no switching key.
struct KeyError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Ciphertexts with incompatible plaintext scale tags were combined.
struct ScaleMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Decryption noise reached the rounding margin.
struct DecryptionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No decomposition base on the candidate grid leaves enough noise margin.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hyena
