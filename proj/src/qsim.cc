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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace teleportsim {

namespace {

bool is_finite(const Complex &c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

void check_qubit(const StateVector &state, QubitId q) {
    if (q >= state.num_qubits()) {
        throw std::out_of_range(
            "qubit " + std::to_string(q) + " out of range for a " + std::to_string(state.num_qubits()) +
            "-qubit register");
    }
}

std::size_t qubit_count_for(std::size_t length) {
    if (length < 2 || !std::has_single_bit(length)) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2, got " + std::to_string(length));
    }
    auto n = static_cast<std::size_t>(std::countr_zero(length));
    if (n > kMaxQubits) {
        throw std::invalid_argument("register larger than " + std::to_string(kMaxQubits) + " qubits");
    }
    return n;
}

double sum_norm(std::span<const Complex> amps) {
    double total = 0;
    for (const auto &c : amps) {
        total += std::norm(c);
    }
    return total;
}

}  // namespace

void QubitAmplitudes::validate() const {
    if (!is_finite(a) || !is_finite(b)) {
        throw NormalizationError("qubit amplitudes must be finite");
    }
    double n = std::norm(a) + std::norm(b);
    if (std::abs(n - 1) > kInputTolerance) {
        throw NormalizationError("|a|^2 + |b|^2 = " + std::to_string(n) + ", expected 1");
    }
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    std::size_t n = qubit_count_for(amplitudes.size());
    if (!std::all_of(amplitudes.begin(), amplitudes.end(), is_finite)) {
        throw std::invalid_argument("amplitudes must be finite");
    }
    double norm2 = sum_norm(amplitudes);
    if (std::abs(norm2 - 1) > kInputTolerance) {
        throw NormalizationError("state norm^2 = " + std::to_string(norm2) + ", expected 1");
    }
    double scale = 1 / std::sqrt(norm2);
    for (auto &c : amplitudes) {
        c *= scale;
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    std::size_t n = qubit_count_for(amplitudes.size());
    if (!std::all_of(amplitudes.begin(), amplitudes.end(), is_finite)) {
        throw std::invalid_argument("amplitudes must be finite");
    }
    double norm2 = sum_norm(amplitudes);
    if (norm2 == 0) {
        throw NormalizationError("cannot normalize the zero vector");
    }
    double scale = 1 / std::sqrt(norm2);
    for (auto &c : amplitudes) {
        c *= scale;
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count out of range: " + std::to_string(num_qubits));
    }
    std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1;
    return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm_squared() const {
    return sum_norm(amplitudes_);
}

double StateVector::max_abs_diff(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
    double worst = 0;
    for (std::size_t i = 0; i < dim(); i++) {
        worst = std::max(worst, std::abs(amplitudes_[i] - other.amplitudes_[i]));
    }
    return worst;
}

Unitary2 Unitary2::adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Unitary2 Unitary2::operator*(const Unitary2 &rhs) const {
    Unitary2 out{};
    for (std::size_t r = 0; r < 2; r++) {
        for (std::size_t c = 0; c < 2; c++) {
            out.m[2 * r + c] = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
        }
    }
    return out;
}

bool Unitary2::is_unitary(double tolerance) const {
    if (!std::all_of(m.begin(), m.end(), is_finite)) {
        return false;
    }
    Unitary2 p = *this * adjoint();
    return std::abs(p.m[0] - 1.0) <= tolerance && std::abs(p.m[1]) <= tolerance && std::abs(p.m[2]) <= tolerance &&
           std::abs(p.m[3] - 1.0) <= tolerance;
}

namespace gates {
Unitary2 identity() {
    return {{1, 0, 0, 1}};
}
Unitary2 hadamard() {
    const double s = 1 / std::sqrt(2.0);
    return {{s, s, s, -s}};
}
Unitary2 pauli_x() {
    return {{0, 1, 1, 0}};
}
Unitary2 pauli_z() {
    return {{1, 0, 0, -1}};
}
Unitary2 i_pauli_y() {
    return {{0, 1, -1, 0}};
}
}  // namespace gates

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0 || entries_.size() != dim * dim) {
        throw std::invalid_argument("density matrix entries must be dim*dim");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    std::size_t d = psi.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            e[i * d + j] = psi[i] * std::conj(psi[j]);
        }
    }
    return {d, std::move(e)};
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    std::vector<Complex> e(dim * dim);
    for (std::size_t i = 0; i < dim; i++) {
        e[i * dim + i] = 1.0 / static_cast<double>(dim);
    }
    return {dim, std::move(e)};
}

Complex DensityMatrix::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

bool DensityMatrix::is_hermitian(double tolerance) const {
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = i; j < dim_; j++) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto &values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

DensityMatrix DensityMatrix::kron(const DensityMatrix &rhs) const {
    std::size_t d = dim_ * rhs.dim_;
    std::vector<Complex> e(d * d);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            for (std::size_t k = 0; k < rhs.dim_; k++) {
                for (std::size_t l = 0; l < rhs.dim_; l++) {
                    e[(i * rhs.dim_ + k) * d + (j * rhs.dim_ + l)] = (*this)(i, j) * rhs(k, l);
                }
            }
        }
    }
    return {d, std::move(e)};
}

double DensityMatrix::max_abs_diff(const DensityMatrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch");
    }
    double worst = 0;
    for (std::size_t i = 0; i < entries_.size(); i++) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

DensityMatrix DensityMatrix::operator+(const DensityMatrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch");
    }
    std::vector<Complex> e = entries_;
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] += rhs.entries_[i];
    }
    return {dim_, std::move(e)};
}

DensityMatrix DensityMatrix::operator*(double scale) const {
    std::vector<Complex> e = entries_;
    for (auto &c : e) {
        c *= scale;
    }
    return {dim_, std::move(e)};
}

StateVector product_state(const QubitAmplitudes &unknown, const StateVector &entangled) {
    unknown.validate();
    if (std::abs(entangled.norm_squared() - 1) > kInputTolerance) {
        throw NormalizationError("entangled resource is not normalized");
    }
    std::size_t d = entangled.dim();
    std::vector<Complex> amps(2 * d);
    for (std::size_t j = 0; j < d; j++) {
        amps[j] = unknown.a * entangled[j];
        amps[d + j] = unknown.b * entangled[j];
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector bell_pair() {
    return ghz(2);
}

StateVector ghz(std::size_t n) {
    if (n < 2 || n > kMaxQubits) {
        throw std::invalid_argument("GHZ size must be in [2, " + std::to_string(kMaxQubits) + "], got " + std::to_string(n));
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    const double s = 1 / std::sqrt(2.0);
    amps.front() = s;
    amps.back() = s;
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_single(const StateVector &state, const Unitary2 &gate, QubitId q) {
    check_qubit(state, q);
    if (!gate.is_unitary()) {
        throw std::invalid_argument("gate is not unitary");
    }
    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
    std::size_t bit = state.mask(q);
    for (std::size_t i = 0; i < state.dim(); i++) {
        if (i & bit) {
            continue;
        }
        Complex v0 = state[i];
        Complex v1 = state[i | bit];
        out[i] = gate(0, 0) * v0 + gate(0, 1) * v1;
        out[i | bit] = gate(1, 0) * v0 + gate(1, 1) * v1;
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector apply_cnot(const StateVector &state, QubitId control, QubitId target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    std::vector<Complex> out(state.dim());
    std::size_t c = state.mask(control);
    std::size_t t = state.mask(target);
    for (std::size_t i = 0; i < state.dim(); i++) {
        out[(i & c) ? (i ^ t) : i] = state[i];
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector chained_xor(const StateVector &state, std::span<const QubitId> qubits) {
    if (qubits.size() < 2) {
        throw std::invalid_argument("chained XOR needs at least two qubits");
    }
    std::set<QubitId> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size()) {
        throw std::invalid_argument("chained XOR qubits must be distinct");
    }
    StateVector out = state;
    for (std::size_t k = 0; k + 1 < qubits.size(); k++) {
        out = apply_cnot(out, qubits[k], qubits[k + 1]);
    }
    return out;
}

double probability_of_one(const StateVector &state, QubitId q) {
    check_qubit(state, q);
    std::size_t bit = state.mask(q);
    double p = 0;
    for (std::size_t i = 0; i < state.dim(); i++) {
        if (i & bit) {
            p += std::norm(state[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

std::pair<MeasurementOutcome, StateVector> project(const StateVector &state, QubitId q, int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("measurement bit must be 0 or 1");
    }
    double p1 = probability_of_one(state, q);
    double p = bit ? p1 : 1 - p1;
    if (p <= 0) {
        throw std::domain_error("projection onto a zero-probability outcome");
    }
    std::size_t mask = state.mask(q);
    std::vector<Complex> out(state.dim());
    for (std::size_t i = 0; i < state.dim(); i++) {
        if (((i & mask) != 0) == (bit == 1)) {
            out[i] = state[i];
        }
    }
    return {MeasurementOutcome{q, bit, p}, StateVector::normalized(std::move(out))};
}

std::pair<MeasurementOutcome, StateVector> measure(const StateVector &state, QubitId q, double rand) {
    if (!(rand >= 0 && rand < 1)) {
        throw std::invalid_argument("measurement draw must lie in [0, 1)");
    }
    double p1 = probability_of_one(state, q);
    double p0 = 1 - p1;
    int bit = rand < p0 ? 0 : 1;
    // Rounding can leave p0 a hair below 1 (or above 0); never pick an empty branch.
    if (bit == 1 && p1 <= 0) {
        bit = 0;
    } else if (bit == 0 && p0 <= 0) {
        bit = 1;
    }
    return project(state, q, bit);
}

DensityMatrix reduced_density(const StateVector &state, std::span<const QubitId> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduced_density needs at least one kept qubit");
    }
    std::set<QubitId> kept(keep.begin(), keep.end());
    for (QubitId q : kept) {
        check_qubit(state, q);
    }
    std::vector<QubitId> order(kept.begin(), kept.end());
    std::vector<QubitId> env;
    for (QubitId q = 0; q < state.num_qubits(); q++) {
        if (!kept.contains(q)) {
            env.push_back(q);
        }
    }

    // Full index from (kept index, environment index).
    auto compose = [&](std::size_t k, std::size_t e) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < order.size(); i++) {
            if (k & (std::size_t{1} << (order.size() - 1 - i))) {
                idx |= state.mask(order[i]);
            }
        }
        for (std::size_t i = 0; i < env.size(); i++) {
            if (e & (std::size_t{1} << (env.size() - 1 - i))) {
                idx |= state.mask(env[i]);
            }
        }
        return idx;
    };

    std::size_t dk = std::size_t{1} << order.size();
    std::size_t de = std::size_t{1} << env.size();
    std::vector<Complex> rho(dk * dk);
    for (std::size_t i = 0; i < dk; i++) {
        for (std::size_t j = 0; j < dk; j++) {
            Complex acc = 0;
            for (std::size_t e = 0; e < de; e++) {
                acc += state[compose(i, e)] * std::conj(state[compose(j, e)]);
            }
            rho[i * dk + j] = acc;
        }
    }
    return {dk, std::move(rho)};
}

double fidelity(const StateVector &psi, const StateVector &phi) {
    if (psi.dim() != phi.dim()) {
        throw std::invalid_argument("fidelity of states with different qubit counts");
    }
    Complex overlap = 0;
    for (std::size_t i = 0; i < psi.dim(); i++) {
        overlap += std::conj(psi[i]) * phi[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double fidelity(const DensityMatrix &rho, const StateVector &phi) {
    if (rho.dim() != phi.dim()) {
        throw std::invalid_argument("fidelity of operands with different dimensions");
    }
    Complex acc = 0;
    for (std::size_t i = 0; i < rho.dim(); i++) {
        for (std::size_t j = 0; j < rho.dim(); j++) {
            acc += std::conj(phi[i]) * rho(i, j) * phi[j];
        }
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

StateVector qubit_state(const QubitAmplitudes &amplitudes) {
    amplitudes.validate();
    return StateVector::from_amplitudes({amplitudes.a, amplitudes.b});
}

}  // namespace teleportsim
