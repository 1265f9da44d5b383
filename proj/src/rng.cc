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

#include "teleportsim/rng.h"

#include <cmath>

namespace teleportsim {

QubitAmplitudes random_qubit(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x9e3779b9u};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal;
    for (;;) {
        Complex a(normal(engine), normal(engine));
        Complex b(normal(engine), normal(engine));
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-6) {
            return {a / n, b / n};
        }
    }
}

}  // namespace teleportsim
