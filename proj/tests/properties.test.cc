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


// Randomized properties of the simulator. Inputs come from fixed-seed
// engines so failures reproduce.

#include <cmath>

#include "gtest/gtest.h"
#include "teleportsim/protocol.h"
#include "teleportsim/qsim.h"
#include "test_oracles.h"

using namespace teleportsim;
using namespace teleportsim::test;

namespace {

constexpr int kCases = 200;

}  // namespace

TEST(property, gates_preserve_norm) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < kCases; i++) {
        std::size_t n = 1 + rng() % kMaxQubits;
        auto s = random_state(rng, n);
        QubitId q = rng() % n;
        EXPECT_NEAR(apply_single(s, random_unitary(rng), q).norm_squared(), 1, 1e-12);
        if (n >= 2) {
            QubitId t = (q + 1 + rng() % (n - 1)) % n;
            EXPECT_NEAR(apply_cnot(s, q, t).norm_squared(), 1, 1e-12);
        }
    }
}

TEST(property, single_qubit_gate_matches_full_matrix) {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 50; i++) {
        std::size_t n = 1 + rng() % 5;
        auto s = random_state(rng, n);
        auto u = random_unitary(rng);
        QubitId q = rng() % n;
        auto got = apply_single(s, u, q);
        auto want = full_single_oracle(s, u, q);
        for (std::size_t k = 0; k < want.size(); k++) {
            EXPECT_NEAR(std::abs(got[k] - want[k]), 0, 1e-12);
        }
    }
}

TEST(property, involutions) {
    std::mt19937_64 rng(107);
    for (int i = 0; i < kCases; i++) {
        std::size_t n = 2 + rng() % (kMaxQubits - 1);
        auto s = random_state(rng, n);
        QubitId c = rng() % n;
        QubitId t = (c + 1 + rng() % (n - 1)) % n;
        auto h = gates::hadamard();
        EXPECT_LE(apply_single(apply_single(s, h, c), h, c).max_abs_diff(s), 1e-12);
        EXPECT_LE(apply_cnot(apply_cnot(s, c, t), c, t).max_abs_diff(s), 1e-12);
        auto u = random_unitary(rng);
        EXPECT_LE(apply_single(apply_single(s, u, t), u.adjoint(), t).max_abs_diff(s), 1e-12);
    }
}

TEST(property, chained_xor_alternating_pattern) {
    std::mt19937_64 rng(109);
    for (std::size_t n = 2; n <= 7; n++) {
        auto u = random_unknown(rng);
        std::vector<QubitId> chain(n);
        for (std::size_t k = 0; k < n; k++) {
            chain[k] = k;
        }
        double h = 1 / std::sqrt(2.0);
        auto resource = n == 2 ? StateVector::from_amplitudes({h, h}) : ghz(n - 1);
        auto s = chained_xor(product_state(u, resource), chain);
        // Unknown bit 0 gives 0101..., bit 1 gives 1010... and 1111...;
        // built bitwise from the definition of a left-to-right XOR chain.
        auto chain_oracle = [&](std::vector<int> bits) {
            for (std::size_t k = 0; k + 1 < n; k++) {
                bits[k + 1] ^= bits[k];
            }
            std::size_t idx = 0;
            for (int b : bits) {
                idx = 2 * idx + static_cast<std::size_t>(b);
            }
            return idx;
        };
        std::vector<int> zeros(n, 0), ones(n, 1), a_rest(n, 1), b_zeros(n, 0);
        a_rest[0] = 0;
        b_zeros[0] = 1;
        std::map<std::size_t, Complex> want{{chain_oracle(zeros), u.a * h},
                                            {chain_oracle(a_rest), u.a * h},
                                            {chain_oracle(b_zeros), u.b * h},
                                            {chain_oracle(ones), u.b * h}};
        expect_amplitudes(s, want);
        // The closed form: all-zero, alternating 0101..., 1111..., alternating 1010....
        std::size_t alt01 = 0, alt10 = 0;
        for (std::size_t k = 0; k < n; k++) {
            alt01 = 2 * alt01 + (k % 2);
            alt10 = 2 * alt10 + ((k + 1) % 2);
        }
        EXPECT_EQ(chain_oracle(a_rest), alt01);
        EXPECT_EQ(chain_oracle(ones), alt10);
        EXPECT_EQ(chain_oracle(b_zeros), (std::size_t{1} << n) - 1);
    }
}

TEST(property, hadamard_on_x_commutes_with_xor_on_y_z) {
    std::mt19937_64 rng(113);
    for (int i = 0; i < kCases; i++) {
        auto s = random_state(rng, 3 + rng() % 3);
        auto a = apply_cnot(apply_single(s, gates::hadamard(), 0), 1, 2);
        auto b = apply_single(apply_cnot(s, 1, 2), gates::hadamard(), 0);
        EXPECT_LE(a.max_abs_diff(b), 1e-12);
    }
}

TEST(property, measurement_probabilities_and_collapse) {
    std::mt19937_64 rng(127);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int i = 0; i < kCases; i++) {
        std::size_t n = 1 + rng() % kMaxQubits;
        auto s = random_state(rng, n);
        QubitId q = rng() % n;
        double p1 = probability_of_one(s, q);
        EXPECT_NEAR(p1, marginal_probability_oracle(s, {{q, 1}}), 1e-12);
        auto [o, post] = measure(s, q, unit(rng));
        EXPECT_NEAR(o.probability, o.bit ? p1 : 1 - p1, 1e-12);
        EXPECT_NEAR(post.norm_squared(), 1, 1e-12);
        EXPECT_NEAR(probability_of_one(post, q), o.bit, 1e-12);
    }
}

TEST(property, reduced_density_is_a_state) {
    std::mt19937_64 rng(131);
    for (int i = 0; i < kCases; i++) {
        std::size_t n = 1 + rng() % 6;
        auto s = random_state(rng, n);
        std::vector<QubitId> keep;
        for (QubitId q = 0; q < n; q++) {
            if (rng() % 2) {
                keep.push_back(q);
            }
        }
        if (keep.empty()) {
            keep.push_back(rng() % n);
        }
        auto rho = reduced_density(s, keep);
        EXPECT_EQ(rho.dim(), std::size_t{1} << keep.size());
        EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0, 1e-12);
        EXPECT_TRUE(rho.is_hermitian());
        for (double v : rho.eigenvalues()) {
            EXPECT_GE(v, -1e-12);
            EXPECT_LE(v, 1 + 1e-12);
        }
    }
}

TEST(property, reduced_density_diagonal_matches_marginals) {
    std::mt19937_64 rng(137);
    for (int i = 0; i < 50; i++) {
        auto s = random_state(rng, 4);
        std::vector<QubitId> keep{1, 3};
        auto rho = reduced_density(s, keep);
        for (int b1 : {0, 1}) {
            for (int b3 : {0, 1}) {
                double want = marginal_probability_oracle(s, {{1, b1}, {3, b3}});
                std::size_t k = static_cast<std::size_t>(2 * b1 + b3);
                EXPECT_NEAR(rho(k, k).real(), want, 1e-12);
            }
        }
    }
}

TEST(property, fidelity_is_phase_invariant_and_bounded) {
    std::mt19937_64 rng(139);
    std::uniform_real_distribution<double> ang(0, 6.28);
    for (int i = 0; i < kCases; i++) {
        std::size_t n = 1 + rng() % 4;
        auto a = random_state(rng, n);
        auto b = random_state(rng, n);
        std::vector<Complex> rotated(b.amplitudes().begin(), b.amplitudes().end());
        Complex phase = std::polar(1.0, ang(rng));
        for (auto &c : rotated) {
            c *= phase;
        }
        double f = fidelity(a, b);
        EXPECT_NEAR(f, fidelity(a, StateVector::from_amplitudes(rotated)), 1e-12);
        EXPECT_NEAR(f, std::pow(inner_product_oracle(a, b), 2), 1e-12);
        EXPECT_GE(f, 0);
        EXPECT_LE(f, 1 + 1e-12);
    }
}

TEST(property, every_protocol_teleports_random_states) {
    std::mt19937_64 rng(149);
    for (ProtocolId id : kAllProtocols) {
        for (std::uint64_t seed = 0; seed < 100; seed++) {
            auto t = run(id, random_unknown(rng), seed);
            EXPECT_GE(t.final_fidelity, 1 - 1e-10);
            EXPECT_TRUE(audit_locality(t).passed);
            for (std::size_t k = 0; k < t.snapshots.size(); k++) {
                EXPECT_NEAR(t.snapshots[k].norm_squared(), 1, 1e-12);
            }
        }
    }
}
