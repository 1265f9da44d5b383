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

#include "teleportsim/qsim.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_oracles.h"

using namespace teleportsim;
using namespace teleportsim::test;

namespace {

const double kS = 1 / std::sqrt(2.0);

// Generic coefficient pair used throughout; (0.6, 0.8i) is the pair the
// product-state example names.
const QubitAmplitudes kGeneric{{0.6, 0.0}, {0.0, 0.8}};

StateVector protocol1_after_1b(const QubitAmplitudes &u) {
    auto s = apply_cnot(product_state(u, bell_pair()), 0, 1);
    return apply_cnot(s, 1, 2);
}

}  // namespace

TEST(product_state, unknown_times_bell_pair) {
    auto s = product_state(kGeneric, bell_pair());
    Complex a = kGeneric.a * kS;
    Complex b = kGeneric.b * kS;
    // a|000> + b|100> + a|011> + b|111>
    expect_amplitudes(s, {{0b000, a}, {0b100, b}, {0b011, a}, {0b111, b}});
}

TEST(product_state, basis_product) {
    auto s = product_state({1, 0}, StateVector::basis(2, 0));
    expect_amplitudes(s, {{0, 1.0}});
}

TEST(product_state, matches_kronecker_oracle) {
    auto g = ghz(3);
    auto s = product_state(kGeneric, g);
    auto expected = kron_oracle({kGeneric.a, kGeneric.b}, {g.amplitudes().begin(), g.amplitudes().end()});
    ASSERT_EQ(s.dim(), expected.size());
    for (std::size_t i = 0; i < expected.size(); i++) {
        EXPECT_NEAR(std::abs(s[i] - expected[i]), 0, 1e-15) << i;
    }
}

TEST(product_state, rejects_non_normalized_unknown) {
    EXPECT_THROW(product_state({1, 1}, bell_pair()), NormalizationError);
    EXPECT_THROW(product_state({0.6, 0.8 + 1e-6}, bell_pair()), NormalizationError);
    EXPECT_NO_THROW(product_state({0.6, 0.8 + 1e-10}, bell_pair()));
}

TEST(state_vector, rejects_bad_amplitudes) {
    EXPECT_THROW(StateVector::from_amplitudes({1, 1}), NormalizationError);
    EXPECT_THROW(StateVector::from_amplitudes({1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes({std::nan(""), 0}), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes(std::vector<Complex>(512, 0)), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized({0, 0}), NormalizationError);
}

TEST(resources, bell_and_ghz) {
    expect_amplitudes(bell_pair(), {{0, kS}, {3, kS}});
    expect_amplitudes(ghz(3), {{0, kS}, {7, kS}});
    expect_amplitudes(ghz(4), {{0, kS}, {15, kS}});
    EXPECT_EQ(ghz(8).num_qubits(), 8u);
    EXPECT_THROW(ghz(1), std::invalid_argument);
    EXPECT_THROW(ghz(9), std::invalid_argument);
}

TEST(apply_single, hadamard_on_zero) {
    auto s = apply_single(StateVector::basis(1, 0), gates::hadamard(), 0);
    expect_amplitudes(s, {{0, kS}, {1, kS}});
}

TEST(apply_single, hadamard_after_chained_xor) {
    auto s = apply_single(protocol1_after_1b(kGeneric), gates::hadamard(), 0);
    // a(|000> + |100>) + b(|011> - |111>) + a(|010> + |110>) + b(|001> - |101>), over 2.
    Complex a = kGeneric.a / 2.0;
    Complex b = kGeneric.b / 2.0;
    expect_amplitudes(
        s, {{0b000, a}, {0b100, a}, {0b011, b}, {0b111, -b}, {0b010, a}, {0b110, a}, {0b001, b}, {0b101, -b}});
}

TEST(apply_single, phase_flip_restores_sign) {
    auto flipped = StateVector::from_amplitudes({kGeneric.a, -kGeneric.b});
    auto s = apply_single(flipped, gates::pauli_z(), 0);
    expect_amplitudes(s, {{0, kGeneric.a}, {1, kGeneric.b}});
}

TEST(apply_single, matches_full_matrix_oracle) {
    auto s = product_state(kGeneric, ghz(3));
    for (QubitId q = 0; q < 4; q++) {
        auto got = apply_single(s, gates::hadamard(), q);
        auto want = full_single_oracle(s, gates::hadamard(), q);
        for (std::size_t i = 0; i < want.size(); i++) {
            EXPECT_NEAR(std::abs(got[i] - want[i]), 0, 1e-15);
        }
    }
}

TEST(apply_single, errors) {
    auto s = bell_pair();
    EXPECT_THROW(apply_single(s, gates::hadamard(), 2), std::out_of_range);
    EXPECT_THROW(apply_single(s, Unitary2{{1, 1, 0, 1}}, 0), std::invalid_argument);
}

TEST(apply_cnot, chained_steps_match_written_states) {
    auto s = apply_cnot(product_state(kGeneric, bell_pair()), 0, 1);
    Complex a = kGeneric.a * kS;
    Complex b = kGeneric.b * kS;
    expect_amplitudes(s, {{0b000, a}, {0b110, b}, {0b011, a}, {0b101, b}});
    s = apply_cnot(s, 1, 2);
    expect_amplitudes(s, {{0b000, a}, {0b111, b}, {0b010, a}, {0b101, b}});
}

TEST(apply_cnot, involution) {
    auto s = product_state(kGeneric, ghz(3));
    auto twice = apply_cnot(apply_cnot(s, 2, 0), 2, 0);
    EXPECT_LE(twice.max_abs_diff(s), kAlgebraTolerance);
}

TEST(apply_cnot, matches_permutation_oracle) {
    auto s = product_state(kGeneric, ghz(3));
    for (QubitId c = 0; c < 4; c++) {
        for (QubitId t = 0; t < 4; t++) {
            if (c == t) {
                continue;
            }
            auto got = apply_cnot(s, c, t);
            auto want = full_cnot_oracle(s, c, t);
            for (std::size_t i = 0; i < want.size(); i++) {
                EXPECT_EQ(got[i], want[i]);
            }
        }
    }
}

TEST(apply_cnot, errors) {
    EXPECT_THROW(apply_cnot(bell_pair(), 1, 1), std::invalid_argument);
    EXPECT_THROW(apply_cnot(bell_pair(), 0, 2), std::out_of_range);
}

TEST(chained_xor, five_qubit_alternating_pattern) {
    std::vector<QubitId> chain{0, 1, 2, 3, 4};
    auto s = chained_xor(product_state(kGeneric, ghz(4)), chain);
    Complex a = kGeneric.a * kS;
    Complex b = kGeneric.b * kS;
    expect_amplitudes(s, {{0b00000, a}, {0b11111, b}, {0b01010, a}, {0b10101, b}});
}

TEST(chained_xor, length_two_is_cnot) {
    auto s = product_state(kGeneric, bell_pair());
    std::vector<QubitId> chain{0, 1};
    EXPECT_EQ(chained_xor(s, chain).max_abs_diff(apply_cnot(s, 0, 1)), 0);
}

TEST(chained_xor, three_particle_resource) {
    std::vector<QubitId> chain{0, 1, 2};
    auto s = chained_xor(product_state(kGeneric, ghz(3)), chain);
    Complex a = kGeneric.a * kS;
    Complex b = kGeneric.b * kS;
    expect_amplitudes(s, {{0b0000, a}, {0b1110, b}, {0b0101, a}, {0b1011, b}});
}

TEST(chained_xor, errors) {
    auto s = ghz(3);
    std::vector<QubitId> dup{0, 1, 0};
    std::vector<QubitId> one{0};
    EXPECT_THROW(chained_xor(s, dup), std::invalid_argument);
    EXPECT_THROW(chained_xor(s, one), std::invalid_argument);
}

TEST(measure, symmetric_superposition) {
    auto [outcome, post] = measure(StateVector::from_amplitudes({kS, kS}), 0, 0.3);
    EXPECT_EQ(outcome.bit, 0);
    EXPECT_NEAR(outcome.probability, 0.5, 1e-15);
    expect_amplitudes(post, {{0, 1.0}});
    auto [o1, p1] = measure(StateVector::from_amplitudes({kS, kS}), 0, 0.7);
    EXPECT_EQ(o1.bit, 1);
    expect_amplitudes(p1, {{1, 1.0}});
}

TEST(measure, zero_probability_outcome_never_selected) {
    EXPECT_EQ(measure(StateVector::basis(1, 0), 0, 0.999999).first.bit, 0);
    EXPECT_EQ(measure(StateVector::basis(1, 1), 0, 0.0).first.bit, 1);
    EXPECT_THROW(project(StateVector::basis(1, 0), 0, 1), std::domain_error);
    EXPECT_THROW(measure(StateVector::basis(1, 0), 0, 1.0), std::invalid_argument);
    EXPECT_THROW(measure(StateVector::basis(1, 0), 0, -0.1), std::invalid_argument);
}

TEST(measure, protocol1_residual_z_states) {
    auto post_h = apply_single(protocol1_after_1b(kGeneric), gates::hadamard(), 0);
    for (int x : {0, 1}) {
        for (int y : {0, 1}) {
            auto s = project(project(post_h, 0, x).second, 1, y).second;
            std::size_t base = static_cast<std::size_t>(4 * x + 2 * y);
            Complex sign = x ? -1.0 : 1.0;
            EXPECT_NEAR(std::abs(s[base] - kGeneric.a), 0, 1e-12);
            EXPECT_NEAR(std::abs(s[base + 1] - sign * kGeneric.b), 0, 1e-12);
        }
    }
}

TEST(measure, protocol1_outcome_pairs_are_uniform) {
    for (const auto &u : {kGeneric, QubitAmplitudes{1, 0}, QubitAmplitudes{{0.28, -0.1}, {0.5, 0.8123}}}) {
        QubitAmplitudes n = u;
        double norm = std::sqrt(std::norm(n.a) + std::norm(n.b));
        n.a /= norm;
        n.b /= norm;
        auto post_h = apply_single(protocol1_after_1b(n), gates::hadamard(), 0);
        for (int x : {0, 1}) {
            for (int y : {0, 1}) {
                double oracle = marginal_probability_oracle(post_h, {{0, x}, {1, y}});
                auto [ox, sx] = project(post_h, 0, x);
                auto [oy, sy] = project(sx, 1, y);
                EXPECT_NEAR(oracle, 0.25, 1e-12);
                EXPECT_NEAR(ox.probability * oy.probability, oracle, 1e-12);
            }
        }
    }
}

TEST(reduced_density, bell_marginal_is_maximally_mixed) {
    std::vector<QubitId> keep{0};
    auto rho = reduced_density(bell_pair(), keep);
    EXPECT_LE(rho.max_abs_diff(DensityMatrix::maximally_mixed(2)), 1e-15);
}

TEST(reduced_density, protocol1_y_and_z_are_a_product) {
    auto post_h = apply_single(protocol1_after_1b(kGeneric), gates::hadamard(), 0);
    std::vector<QubitId> yz{1, 2};
    std::vector<QubitId> y{1};
    std::vector<QubitId> z{2};
    auto joint = reduced_density(post_h, yz);
    auto product = reduced_density(post_h, y).kron(reduced_density(post_h, z));
    EXPECT_LE(joint.max_abs_diff(product), kAlgebraTolerance);
}

TEST(reduced_density, outcome_averaged_z_is_diagonal) {
    auto post_h = apply_single(protocol1_after_1b(kGeneric), gates::hadamard(), 0);
    std::vector<QubitId> z{2};
    // Brute-force average over the four projected branches.
    std::vector<Complex> avg(4, 0);
    for (int x : {0, 1}) {
        for (int y : {0, 1}) {
            auto [ox, sx] = project(post_h, 0, x);
            auto [oy, sy] = project(sx, 1, y);
            auto rho = reduced_density(sy, z);
            for (std::size_t k = 0; k < 4; k++) {
                avg[k] += ox.probability * oy.probability * rho.entries()[k];
            }
        }
    }
    EXPECT_NEAR(std::abs(avg[0] - std::norm(kGeneric.a)), 0, 1e-12);
    EXPECT_NEAR(std::abs(avg[3] - std::norm(kGeneric.b)), 0, 1e-12);
    EXPECT_NEAR(std::abs(avg[1]), 0, 1e-12);
    EXPECT_NEAR(std::abs(avg[2]), 0, 1e-12);
}

TEST(reduced_density, errors) {
    std::vector<QubitId> none;
    std::vector<QubitId> bad{5};
    EXPECT_THROW(reduced_density(bell_pair(), none), std::invalid_argument);
    EXPECT_THROW(reduced_density(bell_pair(), bad), std::out_of_range);
}

TEST(fidelity, identity_phase_and_orthogonality) {
    auto s = product_state(kGeneric, bell_pair());
    EXPECT_NEAR(fidelity(s, s), 1, 1e-15);
    std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
    for (auto &c : rotated) {
        c *= std::polar(1.0, 1.234);
    }
    EXPECT_NEAR(fidelity(s, StateVector::from_amplitudes(rotated)), 1, 1e-15);

    auto plus = StateVector::from_amplitudes({kS, kS});
    auto minus = StateVector::from_amplitudes({kS, -kS});
    EXPECT_NEAR(inner_product_oracle(plus, minus), 0, 1e-15);
    EXPECT_NEAR(fidelity(plus, minus), 0, 1e-15);
    EXPECT_THROW(fidelity(plus, bell_pair()), std::invalid_argument);
}

TEST(fidelity, density_form_matches_pure_form) {
    auto psi = StateVector::from_amplitudes({kGeneric.a, kGeneric.b});
    auto phi = StateVector::normalized({{0.3, 0.1}, {-0.2, 0.9}});
    EXPECT_NEAR(fidelity(DensityMatrix::from_pure(psi), phi), fidelity(psi, phi), 1e-15);
}

TEST(density_matrix, eigenvalues_of_mixed_state) {
    auto rho = DensityMatrix::maximally_mixed(4);
    for (double v : rho.eigenvalues()) {
        EXPECT_NEAR(v, 0.25, 1e-15);
    }
    EXPECT_THROW(DensityMatrix(2, {1, 0, 0}), std::invalid_argument);
}

TEST(unitary2, correction_operators_are_unitary) {
    for (const auto &u : {gates::identity(), gates::hadamard(), gates::pauli_x(), gates::pauli_z(), gates::i_pauli_y()}) {
        EXPECT_TRUE(u.is_unitary());
    }
    auto zx = gates::pauli_z() * gates::pauli_x();
    EXPECT_EQ(zx.m, gates::i_pauli_y().m);
}
