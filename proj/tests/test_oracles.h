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


// Independent oracles for the simulator: everything here is computed from
// full 2^n x 2^n matrices or direct index arithmetic, never from qsim's
// strided kernels.

#ifndef TELEPORTSIM_TEST_ORACLES_H
#define TELEPORTSIM_TEST_ORACLES_H

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "teleportsim/qsim.h"

namespace teleportsim::test {

using Matrix = std::vector<std::vector<Complex>>;

inline std::vector<Complex> kron_oracle(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    std::vector<Complex> out;
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

inline Matrix kron_matrix(const Matrix &a, const Matrix &b) {
    std::size_t n = a.size(), m = b.size();
    Matrix out(n * m, std::vector<Complex>(n * m));
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < n; j++)
            for (std::size_t k = 0; k < m; k++)
                for (std::size_t l = 0; l < m; l++)
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
    return out;
}

inline std::vector<Complex> mat_vec(const Matrix &m, std::span<const Complex> v) {
    std::vector<Complex> out(m.size());
    for (std::size_t i = 0; i < m.size(); i++)
        for (std::size_t j = 0; j < v.size(); j++)
            out[i] += m[i][j] * v[j];
    return out;
}

/// I (x) ... (x) U (x) ... (x) I with U in slot q (qubit 0 leftmost).
inline std::vector<Complex> full_single_oracle(const StateVector &s, const Unitary2 &u, QubitId q) {
    Matrix full{{1}};
    for (QubitId k = 0; k < s.num_qubits(); k++) {
        Matrix f = k == q ? Matrix{{u(0, 0), u(0, 1)}, {u(1, 0), u(1, 1)}} : Matrix{{1, 0}, {0, 1}};
        full = kron_matrix(full, f);
    }
    return mat_vec(full, s.amplitudes());
}

/// Bit of qubit q in basis index i, counting qubit 0 as the leftmost symbol.
inline int bit_of(std::size_t i, QubitId q, std::size_t n) {
    return static_cast<int>((i >> (n - 1 - q)) & 1);
}

inline std::vector<Complex> full_cnot_oracle(const StateVector &s, QubitId c, QubitId t) {
    std::size_t n = s.num_qubits();
    std::vector<Complex> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); i++) {
        std::size_t j = i;
        if (bit_of(i, c, n)) {
            j ^= std::size_t{1} << (n - 1 - t);
        }
        out[j] = s[i];
    }
    return out;
}

inline double marginal_probability_oracle(const StateVector &s, const std::vector<std::pair<QubitId, int>> &fixed) {
    double p = 0;
    for (std::size_t i = 0; i < s.dim(); i++) {
        bool match = true;
        for (const auto &[q, b] : fixed) {
            match &= bit_of(i, q, s.num_qubits()) == b;
        }
        if (match) {
            p += std::norm(s[i]);
        }
    }
    return p;
}

/// |<a|b>|.
inline double inner_product_oracle(const StateVector &a, const StateVector &b) {
    Complex acc = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return std::abs(acc);
}

/// Asserts s has exactly the listed nonzero amplitudes, within tol.
inline void expect_amplitudes(const StateVector &s, const std::map<std::size_t, Complex> &nonzero, double tol = 1e-12) {
    for (std::size_t i = 0; i < s.dim(); i++) {
        auto it = nonzero.find(i);
        Complex want = it == nonzero.end() ? Complex{0} : it->second;
        EXPECT_NEAR(std::abs(s[i] - want), 0, tol) << "basis index " << i;
    }
}

/// Uniform-ish random normalized qubit, from the test's own engine.
inline QubitAmplitudes random_unknown(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Complex a{g(rng), g(rng)};
    Complex b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

inline StateVector random_state(std::mt19937_64 &rng, std::size_t num_qubits) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(std::size_t{1} << num_qubits);
    for (auto &c : v) {
        c = {g(rng), g(rng)};
    }
    return StateVector::normalized(v);
}

inline Unitary2 random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> ang(0, 6.283185307179586);
    double t = ang(rng) / 2, p = ang(rng), l = ang(rng), g = ang(rng);
    Complex ph = std::polar(1.0, g);
    return Unitary2{{ph * std::cos(t), -ph * std::polar(1.0, l) * std::sin(t), ph * std::polar(1.0, p) * std::sin(t),
                     ph * std::polar(1.0, p + l) * std::cos(t)}};
}

/// Fidelity of a single-qubit pure state with (a, b), straight from amplitudes.
inline double qubit_fidelity_oracle(Complex x0, Complex x1, const QubitAmplitudes &u) {
    return std::norm(std::conj(u.a) * x0 + std::conj(u.b) * x1);
}

}  // namespace teleportsim::test

#endif
