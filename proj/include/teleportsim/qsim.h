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

#ifndef TELEPORTSIM_QSIM_H
#define TELEPORTSIM_QSIM_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace teleportsim {

using Complex = std::complex<double>;
using QubitId = std::size_t;

/// Tolerance for algebraic identities (norms, unitarity, involutions).
inline constexpr double kAlgebraTolerance = 1e-12;
/// Tolerance applied to caller supplied amplitudes.
inline constexpr double kInputTolerance = 1e-9;
inline constexpr std::size_t kMaxQubits = 8;

struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Normalized single-qubit amplitude pair a|0> + b|1>.
struct QubitAmplitudes {
    Complex a;
    Complex b;

    /// Throws NormalizationError unless |a|^2 + |b|^2 = 1 within kInputTolerance.
    void validate() const;
    bool operator==(const QubitAmplitudes &) const = default;
};

/// Dense pure state over 2^n computational basis states.
///
/// Qubit 0 is the leftmost ket symbol and the most significant bit of the
/// basis index, so |XYZ> lives at index 4X + 2Y + Z. Values are immutable;
/// every operation in this header returns a new state.
class StateVector {
   public:
    /// Validates the length (2^n, 1 <= n <= kMaxQubits), finiteness and
    /// normalization (within kInputTolerance), then renormalizes exactly.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    /// Scales any nonzero finite vector to unit norm.
    static StateVector normalized(std::vector<Complex> amplitudes);
    static StateVector basis(std::size_t num_qubits, std::size_t index);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex &operator[](std::size_t index) const { return amplitudes_[index]; }
    double norm_squared() const;

    /// Bit mask selecting qubit q inside a basis index.
    std::size_t mask(QubitId q) const { return std::size_t{1} << (num_qubits_ - 1 - q); }

    /// Largest elementwise |difference|; throws on dimension mismatch.
    double max_abs_diff(const StateVector &other) const;

   private:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// 2x2 matrix in row-major order.
struct Unitary2 {
    std::array<Complex, 4> m;

    Complex operator()(std::size_t row, std::size_t col) const { return m[2 * row + col]; }
    Unitary2 adjoint() const;
    Unitary2 operator*(const Unitary2 &rhs) const;
    bool is_unitary(double tolerance = kAlgebraTolerance) const;
};

namespace gates {
Unitary2 identity();
Unitary2 hadamard();
Unitary2 pauli_x();
Unitary2 pauli_z();
/// [[0, 1], [-1, 0]], i.e. i*Y, equal to Z*X.
Unitary2 i_pauli_y();
}  // namespace gates

class DensityMatrix {
   public:
    DensityMatrix(std::size_t dim, std::vector<Complex> entries);

    /// Pure-state projector |psi><psi|.
    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Complex &operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

    Complex trace() const;
    bool is_hermitian(double tolerance = kAlgebraTolerance) const;
    /// Ascending eigenvalues of the Hermitian part.
    std::vector<double> eigenvalues() const;
    DensityMatrix kron(const DensityMatrix &rhs) const;
    double max_abs_diff(const DensityMatrix &other) const;

    DensityMatrix operator+(const DensityMatrix &rhs) const;
    DensityMatrix operator*(double scale) const;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

struct MeasurementOutcome {
    QubitId qubit;
    int bit;
    /// Born probability of `bit` in the pre-measurement state.
    double probability;
};

/// (a|0> + b|1>) (x) entangled, with the unknown qubit as qubit 0.
StateVector product_state(const QubitAmplitudes &unknown, const StateVector &entangled);

/// (|00> + |11>)/sqrt(2).
StateVector bell_pair();
/// (|0...0> + |1...1>)/sqrt(2) on n qubits, 2 <= n <= kMaxQubits.
StateVector ghz(std::size_t n);

StateVector apply_single(const StateVector &state, const Unitary2 &gate, QubitId q);
StateVector apply_cnot(const StateVector &state, QubitId control, QubitId target);
/// CNOT over consecutive pairs: (q0,q1), (q1,q2), ...
StateVector chained_xor(const StateVector &state, std::span<const QubitId> qubits);

/// Probability that measuring q yields 1.
double probability_of_one(const StateVector &state, QubitId q);

/// Projects q onto `bit` and renormalizes. Throws std::domain_error when the
/// outcome has zero probability.
std::pair<MeasurementOutcome, StateVector> project(const StateVector &state, QubitId q, int bit);

/// Computational-basis measurement driven by a uniform draw in [0, 1):
/// outcome 0 iff rand < P(0). A zero-probability outcome is never selected.
std::pair<MeasurementOutcome, StateVector> measure(const StateVector &state, QubitId q, double rand);

/// Partial trace onto `keep`. Kept qubits are ordered by ascending id, the
/// smallest being the most significant bit of the reduced index.
DensityMatrix reduced_density(const StateVector &state, std::span<const QubitId> keep);

/// |<psi|phi>|^2.
double fidelity(const StateVector &psi, const StateVector &phi);
/// <phi|rho|phi>.
double fidelity(const DensityMatrix &rho, const StateVector &phi);

/// The single-qubit state a|0> + b|1> as a StateVector.
StateVector qubit_state(const QubitAmplitudes &amplitudes);

}  // namespace teleportsim

#endif
