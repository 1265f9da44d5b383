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

#ifndef TELEPORTSIM_ANALYSIS_H
#define TELEPORTSIM_ANALYSIS_H

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "teleportsim/protocol.h"
#include "teleportsim/qsim.h"

namespace teleportsim {

/// One complete measurement history of a protocol.
struct BranchNode {
    std::vector<std::pair<QubitId, int>> outcome_bits;
    double probability;
    StateVector post_state;
    int bits_sent;
    int rounds;
    /// Fidelity of the destination qubit with the unknown state.
    double fidelity;
    ProtocolTrace trace;
};

struct BranchTree {
    ProtocolId protocol;
    StateVector root_state;
    std::vector<BranchNode> leaves;
};

/// Expands every measurement into both outcomes, depth first, 0 before 1.
/// Leaf probabilities are products of exact Born probabilities; leaf states
/// carry every correction the protocol applies.
BranchTree enumerate_branches(ProtocolId id, const QubitAmplitudes &unknown, const RunOptions &options = {});

/// Probability-weighted classical bits over all leaves.
double expected_classical_bits(ProtocolId id, const QubitAmplitudes &unknown);
/// Same weighting for communication rounds, silent rounds included.
double expected_classical_rounds(ProtocolId id, const QubitAmplitudes &unknown);

/// Shannon entropy in bits, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> distribution);
/// I(A;B) in bits of a joint distribution joint[a][b].
double mutual_information(const std::vector<std::vector<double>> &joint);
/// Von Neumann entropy in bits; eigenvalues below 1e-15 count as zero.
double von_neumann_entropy(const DensityMatrix &rho);

/// First operator, in kAllCorrectionOps order, that maps qubit q of `state`
/// onto `target` with fidelity 1 within 1e-10, or nullopt.
std::optional<CorrectionOp> required_correction(const StateVector &state, QubitId q, const StateVector &target);

/// I(Y outcome; required correction on Z) over the chained-XOR protocol's leaves.
double y_outcome_informativeness(const QubitAmplitudes &unknown);
/// I(X outcome; required correction on Z), the contrast case.
double x_outcome_informativeness(const QubitAmplitudes &unknown);

struct NoSignalingReport {
    ProtocolId protocol;
    Party receiver;
    std::vector<QubitId> receiver_qubits;
    /// Receiver's reduced state averaged over the sender's outcomes, taken
    /// just before the first classical message.
    DensityMatrix averaged;
    /// Receiver's reduced state before the sender measures anything while
    /// the receiver holds its qubits (outcome-averaged when earlier
    /// measurements exist, as in the three-particle protocol).
    DensityMatrix pre_measurement;
    double deviation;
    bool invariant;
    /// Whether `averaged` changes when the unknown state changes.
    bool depends_on_unknown;
};

NoSignalingReport no_signaling_check(ProtocolId id, const QubitAmplitudes &unknown);

/// Brute-force search for the three-particle protocol's post-measurement
/// corrections: for every (X, Y) outcome, the first (operator, target) pair,
/// operators in kAllCorrectionOps order and targets U before Z, that leaves
/// (Z, U) in a|00> + b|11>.
CorrectionTable derive_protocol2_step4_corrections(const QubitAmplitudes &unknown);

struct CheckResult {
    std::string name;
    bool passed;
    /// Largest observed deviation, when the check is numeric.
    double error = 0;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult *first_failure() const;
    std::size_t failures() const;
    void append(const CheckReport &other);
    /// One "[PASS] name" / "[FAIL] name: detail" line per check.
    std::string render() const;
};

/// Replays the protocols at their intermediate checkpoints and compares the
/// simulated amplitudes against hand-written normalized ket expressions,
/// within 1e-12, for two generic unknown states.
CheckReport reference_state_regression(const RunOptions &options = {});

struct FrequencyAgreement {
    ProtocolId protocol;
    std::size_t trials;
    double max_deviation;
    double tolerance;
    bool passed;
};

/// Seeds seed, seed+1, ... ; compares empirical outcome-pattern frequencies
/// with enumerated leaf probabilities. Tolerance is 4/sqrt(trials).
FrequencyAgreement monte_carlo_agreement(
    ProtocolId id, const QubitAmplitudes &unknown, std::size_t trials, std::uint64_t seed,
    const RunOptions &options = {});

/// Every analysis check in one report: reference states, leaf fidelities,
/// bit expectations, audits, step exchange, Y uninformativeness,
/// no-signaling, Monte-Carlo agreement and the correction-table derivation.
CheckReport run_verification(const RunOptions &options = {});

}  // namespace teleportsim

#endif
