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

#include "hyena/errors.hpp"
#include "hyena/modring/modulus.hpp"
#include "hyena/modring/number_theory.hpp"
#include "hyena/modring/ntt.hpp"
#include "hyena/modring/poly_ops.hpp"
#include "hyena/modring/polynomial.hpp"
#include "hyena/modring/ring_params.hpp"
#include "hyena/modring/wide.hpp"
#include "hyena/bfv/encoder.hpp"
#include "hyena/bfv/encryptor.hpp"
#include "hyena/bfv/evaluator.hpp"
#include "hyena/bfv/galois.hpp"
#include "hyena/bfv/keys.hpp"
#include "hyena/bfv/op_counts.hpp"
#include "hyena/bfv/serialization.hpp"
#include "hyena/oracle/reference.hpp"
#include "hyena/oracle/tensor.hpp"
#include "hyena/conv/convolution.hpp"
#include "hyena/conv/hadamard.hpp"
#include "hyena/conv/kernels.hpp"
#include "hyena/conv/layout.hpp"
#include "hyena/params/calibrate.hpp"
#include "hyena/params/cost_model.hpp"
#include "hyena/params/search.hpp"
#include "hyena/harness/bench.hpp"
#include "hyena/harness/network.hpp"
#include "hyena/harness/noise.hpp"
#include "hyena/harness/verify.hpp"
