// Copyright 2026 The teleportsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELEPORTSIM_RNG_H
#define TELEPORTSIM_RNG_H

#include <cstdint>
#include <random>

#include "teleportsim/qsim.h"

namespace teleportsim {

/// Seeded stream of uniform draws. mt19937_64 output is fixed by the
/// standard, and the unit conversion below is done by hand, so a seed maps
/// to the same draws on every platform.
class UniformStream {
   public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of resolution.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 &engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
};

/// Haar-random single-qubit state: two standard complex normals, normalized.
/// Draws from a stream decorrelated from the protocol stream of the same seed.
QubitAmplitudes random_qubit(std::uint64_t seed);

}  // namespace teleportsim

#endif
