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

#include "teleportsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "teleportsim/ket_expr.h"
#include "teleportsim/rng.h"
#include "teleportsim/text.h"

namespace teleportsim {

namespace {

constexpr double kFidelityTolerance = 1e-10;

constexpr QubitId kX = 0;
constexpr QubitId kY = 1;
constexpr QubitId kZ = 2;
constexpr QubitId kU = 3;

QubitAmplitudes normalize_pair(Complex a, Complex b) {
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

/// Two unrelated generic unknown states, neither real nor balanced.
std::array<QubitAmplitudes, 2> generic_samples() {
    return {
        normalize_pair({0.6, 0.2}, {-0.3, 0.7}),
        normalize_pair({0.9, -0.1}, {0.25, 0.33}),
    };
}

void branch_dfs(
    ProtocolId id, const QubitAmplitudes &unknown, const RunOptions &options, std::vector<int> &prefix,
    std::vector<ProtocolTrace> &out) {
    try {
        out.push_back(run_forced(id, unknown, prefix, options));
    } catch (const OutcomesExhausted &) {
        for (int bit : {0, 1}) {
            prefix.push_back(bit);
            try {
                branch_dfs(id, unknown, options, prefix, out);
            } catch (const std::domain_error &) {
                // zero-probability outcome: no leaf
            }
            prefix.pop_back();
        }
    }
}

std::vector<ProtocolTrace> all_histories(ProtocolId id, const QubitAmplitudes &unknown, const RunOptions &options) {
    std::vector<int> prefix;
    std::vector<ProtocolTrace> out;
    branch_dfs(id, unknown, options, prefix, out);
    return out;
}

double history_probability(const ProtocolTrace &trace) {
    double p = 1;
    for (const auto &e : trace.events) {
        if (const auto *m = std::get_if<MeasureEvent>(&e.payload)) {
            p *= m->probability;
        }
    }
    return p;
}

/// Pure state of the trailing qubits when the leading `fixed` qubits are in
/// the basis state `value`.
StateVector tail_state(const StateVector &s, std::size_t fixed, std::size_t value) {
    std::size_t rest = s.num_qubits() - fixed;
    std::size_t d = std::size_t{1} << rest;
    std::vector<Complex> amps(s.amplitudes().begin() + static_cast<std::ptrdiff_t>(value * d),
                              s.amplitudes().begin() + static_cast<std::ptrdiff_t>((value + 1) * d));
    return StateVector::normalized(std::move(amps));
}

/// State right after the first event matching `pred`.
const StateVector &after_first(const ProtocolTrace &trace, const std::function<bool(const TraceEvent &)> &pred) {
    for (std::size_t i = 0; i < trace.events.size(); i++) {
        if (pred(trace.events[i])) {
            return trace.snapshots[i + 1];
        }
    }
    throw std::logic_error("checkpoint event missing from trace");
}

/// State right before the first event matching pred.
const StateVector &before_first(const ProtocolTrace &trace, const std::function<bool(const TraceEvent &)> &pred) {
    for (std::size_t i = 0; i < trace.events.size(); i++) {
        if (pred(trace.events[i])) {
            return trace.snapshots[i];
        }
    }
    throw std::logic_error("checkpoint event missing from trace");
}

std::function<bool(const TraceEvent &)> is_gate(GateKind gate, std::vector<QubitId> qubits) {
    return [gate, qubits](const TraceEvent &e) { return e.payload == EventPayload{GateEvent{gate, qubits}}; };
}

std::function<bool(const TraceEvent &)> is_measure(QubitId q) {
    return [q](const TraceEvent &e) {
        const auto *m = std::get_if<MeasureEvent>(&e.payload);
        return m != nullptr && m->qubit == q;
    };
}

/// State right before q leaves its first non-Broker holder.
const StateVector &before_transfer_of(const ProtocolTrace &trace, QubitId q) {
    for (std::size_t i = 0; i < trace.events.size(); i++) {
        const auto *t = std::get_if<TransferEvent>(&trace.events[i].payload);
        if (t != nullptr && t->qubit == q && t->from != Party::kBroker) {
            return trace.snapshots[i];
        }
    }
    throw std::logic_error("transfer event missing from trace");
}

Party receiving_party(ProtocolId id) {
    return id == ProtocolId::kProtocol1Reversed ? Party::kAlice : Party::kBob;
}

std::vector<QubitId> holdings_at_end(const ProtocolTrace &trace, Party party) {
    PartyRegister reg(trace.initial_owners);
    for (const auto &e : trace.events) {
        if (const auto *t = std::get_if<TransferEvent>(&e.payload)) {
            reg.transfer(t->qubit, t->to);
        }
    }
    std::vector<QubitId> held;
    for (QubitId q = 0; q < reg.size(); q++) {
        if (reg.owner(q) == party) {
            held.push_back(q);
        }
    }
    return held;
}

struct ReceiverStates {
    std::vector<QubitId> qubits;
    DensityMatrix averaged;
    DensityMatrix pre_measurement;
};

ReceiverStates receiver_states(ProtocolId id, const QubitAmplitudes &unknown) {
    RunOptions options;
    options.halt_before_first_message = true;
    std::vector<ProtocolTrace> histories = all_histories(id, unknown, options);
    Party receiver = receiving_party(id);
    std::vector<QubitId> qubits = holdings_at_end(histories.front(), receiver);

    std::optional<DensityMatrix> averaged;
    std::optional<DensityMatrix> baseline;
    for (const auto &h : histories) {
        if (holdings_at_end(h, receiver) != qubits) {
            throw std::logic_error("receiver holdings differ across branches");
        }
        double p = history_probability(h);
        DensityMatrix rho = reduced_density(h.final_state(), qubits) * p;
        averaged = averaged ? *averaged + rho : rho;

        // Baseline: the later of the first measurement and the receiver taking
        // custody of its last qubit. Weighting each leaf's snapshot by the leaf
        // probability averages over the outcomes observed before that point.
        std::size_t first_measure = h.events.size();
        std::size_t custody = 0;
        for (std::size_t i = 0; i < h.events.size(); i++) {
            if (h.events[i].kind() == EventKind::kMeasure && first_measure == h.events.size()) {
                first_measure = i;
            }
            const auto *t = std::get_if<TransferEvent>(&h.events[i].payload);
            if (t != nullptr && t->to == receiver) {
                custody = i + 1;
            }
        }
        DensityMatrix pre = reduced_density(h.snapshots[std::max(first_measure, custody)], qubits) * p;
        baseline = baseline ? *baseline + pre : pre;
    }
    return {qubits, *averaged, *baseline};
}

CheckResult numeric_check(std::string name, double error, double tolerance, std::string detail = {}) {
    bool ok = error <= tolerance;
    if (detail.empty()) {
        detail = "max error " + format_double(error) + " (tolerance " + format_double(tolerance) + ")";
    }
    return {std::move(name), ok, error, std::move(detail)};
}

CheckResult failed(std::string name, const std::exception &e) {
    return {std::move(name), false, 0, std::string("exception: ") + e.what()};
}

double expected_bits_for(ProtocolId id) {
    switch (id) {
        case ProtocolId::kStandard:
            return 2.0;
        case ProtocolId::kProtocol2Variant:
            return 1.5;
        default:
            return 1.0;
    }
}

}  // namespace

BranchTree enumerate_branches(ProtocolId id, const QubitAmplitudes &unknown, const RunOptions &options) {
    unknown.validate();
    std::vector<ProtocolTrace> histories = all_histories(id, unknown, options);
    BranchTree tree{id, histories.front().snapshots.front(), {}};
    for (auto &h : histories) {
        std::vector<std::pair<QubitId, int>> bits;
        for (const auto &e : h.events) {
            if (const auto *m = std::get_if<MeasureEvent>(&e.payload)) {
                bits.emplace_back(m->qubit, m->bit);
            }
        }
        double p = history_probability(h);
        StateVector post = h.final_state();
        int sent = h.classical_bits_sent;
        int rounds = h.classical_rounds;
        double f = h.final_fidelity;
        tree.leaves.push_back(BranchNode{std::move(bits), p, std::move(post), sent, rounds, f, std::move(h)});
    }
    return tree;
}

double expected_classical_bits(ProtocolId id, const QubitAmplitudes &unknown) {
    double total = 0;
    for (const auto &leaf : enumerate_branches(id, unknown).leaves) {
        total += leaf.probability * leaf.bits_sent;
    }
    return total;
}

double expected_classical_rounds(ProtocolId id, const QubitAmplitudes &unknown) {
    double total = 0;
    for (const auto &leaf : enumerate_branches(id, unknown).leaves) {
        total += leaf.probability * leaf.rounds;
    }
    return total;
}

double shannon_entropy(std::span<const double> distribution) {
    double h = 0;
    for (double p : distribution) {
        if (p > 0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double mutual_information(const std::vector<std::vector<double>> &joint) {
    std::vector<double> row(joint.size(), 0);
    std::vector<double> col;
    for (std::size_t i = 0; i < joint.size(); i++) {
        col.resize(std::max(col.size(), joint[i].size()), 0);
        for (std::size_t j = 0; j < joint[i].size(); j++) {
            row[i] += joint[i][j];
            col[j] += joint[i][j];
        }
    }
    double mi = 0;
    for (std::size_t i = 0; i < joint.size(); i++) {
        for (std::size_t j = 0; j < joint[i].size(); j++) {
            double p = joint[i][j];
            if (p > 0) {
                mi += p * std::log2(p / (row[i] * col[j]));
            }
        }
    }
    return std::max(mi, 0.0);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 1e-15) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

std::optional<CorrectionOp> required_correction(const StateVector &state, QubitId q, const StateVector &target) {
    for (CorrectionOp op : kAllCorrectionOps) {
        StateVector fixed = apply_single(state, correction_matrix(op), q);
        if (fidelity(reduced_density(fixed, std::span<const QubitId>(&q, 1)), target) >= 1 - kFidelityTolerance) {
            return op;
        }
    }
    return std::nullopt;
}

namespace {

/// I(outcome of `measured`; required correction on Z) over the chained-XOR leaves.
double protocol1_informativeness(const QubitAmplitudes &unknown, QubitId measured) {
    StateVector target = qubit_state(unknown);
    std::vector<std::vector<double>> joint(2, std::vector<double>(kAllCorrectionOps.size(), 0));
    for (const auto &leaf : enumerate_branches(ProtocolId::kProtocol1, unknown).leaves) {
        const ProtocolTrace &t = leaf.trace;
        std::size_t idx = 0;
        while (t.events.at(idx).kind() != EventKind::kCorrection) {
            idx++;
        }
        auto op = required_correction(t.snapshots[idx], kZ, target);
        if (!op) {
            throw std::logic_error("no single-qubit correction recovers the unknown state");
        }
        int bit = -1;
        for (const auto &[q, b] : leaf.outcome_bits) {
            if (q == measured) {
                bit = b;
            }
        }
        joint.at(static_cast<std::size_t>(bit))[static_cast<std::size_t>(*op)] += leaf.probability;
    }
    return mutual_information(joint);
}

}  // namespace

double y_outcome_informativeness(const QubitAmplitudes &unknown) {
    return protocol1_informativeness(unknown, kY);
}

double x_outcome_informativeness(const QubitAmplitudes &unknown) {
    return protocol1_informativeness(unknown, kX);
}

NoSignalingReport no_signaling_check(ProtocolId id, const QubitAmplitudes &unknown) {
    unknown.validate();
    ReceiverStates states = receiver_states(id, unknown);
    double deviation = states.averaged.max_abs_diff(states.pre_measurement);

    const double s = 1 / std::sqrt(2.0);
    bool depends = false;
    for (const QubitAmplitudes &ref : {QubitAmplitudes{1, 0}, QubitAmplitudes{0, 1}, QubitAmplitudes{s, s}}) {
        if (receiver_states(id, ref).averaged.max_abs_diff(states.averaged) > kFidelityTolerance) {
            depends = true;
        }
    }
    return {id,
            receiving_party(id),
            states.qubits,
            states.averaged,
            states.pre_measurement,
            deviation,
            deviation <= kFidelityTolerance,
            depends};
}

CorrectionTable derive_protocol2_step4_corrections(const QubitAmplitudes &unknown) {
    StateVector s = product_state(unknown, ghz(3));
    std::array<QubitId, 3> chain{kX, kY, kZ};
    s = apply_single(chained_xor(s, chain), gates::hadamard(), kX);
    StateVector target = (unknown.a * ket("00") + unknown.b * ket("11")).to_state();

    CorrectionTable table;
    for (int mx : {0, 1}) {
        for (int my : {0, 1}) {
            StateVector branch = project(project(s, kX, mx).second, kY, my).second;
            bool found = false;
            for (CorrectionOp op : kAllCorrectionOps) {
                for (QubitId q : {kU, kZ}) {
                    StateVector fixed = apply_single(branch, correction_matrix(op), q);
                    std::array<QubitId, 2> zu{kZ, kU};
                    if (!found && fidelity(reduced_density(fixed, zu), target) >= 1 - kFidelityTolerance) {
                        table.set({mx, my}, {{Party::kAlice, q, op}});
                        found = true;
                    }
                }
            }
            if (!found) {
                throw std::logic_error("no single-qubit correction restores a|00> + b|11>");
            }
        }
    }
    return table;
}

bool CheckReport::passed() const {
    return first_failure() == nullptr;
}

const CheckResult *CheckReport::first_failure() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return &c;
        }
    }
    return nullptr;
}

std::size_t CheckReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto &c) { return !c.passed; }));
}

void CheckReport::append(const CheckReport &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string CheckReport::render() const {
    std::ostringstream out;
    for (const auto &c : checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) {
            out << ": " << c.detail;
        }
        out << "\n";
    }
    return out.str();
}

CheckReport reference_state_regression(const RunOptions &options) {
    CheckReport report;
    const auto samples = generic_samples();
    auto compare = [&](const std::string &name, const StateVector &simulated, const KetExpr &expected) {
        report.checks.push_back(
            numeric_check(name, simulated.max_abs_diff(expected.to_state()), kAlgebraTolerance));
    };
    auto guarded = [&](const std::string &name, const std::function<void()> &body) {
        try {
            body();
        } catch (const std::exception &e) {
            report.checks.push_back(failed(name, e));
        }
    };

    for (std::size_t si = 0; si < samples.size(); si++) {
        const Complex a = samples[si].a;
        const Complex b = samples[si].b;
        const std::string tag = " [sample " + std::to_string(si + 1) + "]";
        const KetExpr phi = a * ket("0") + b * ket("1");
        const KetExpr phi_flip = a * ket("0") - b * ket("1");
        const KetExpr plus = ket("0") + ket("1");

        guarded("protocol1 checkpoints" + tag, [&] {
            ProtocolTrace t = run_forced(ProtocolId::kProtocol1, samples[si], std::vector{0, 0}, options);
            compare("protocol1 initial state" + tag, t.snapshots.front(),
                    a * ket("000") + b * ket("100") + a * ket("011") + b * ket("111"));
            compare("protocol1 after XOR(X,Y)" + tag, after_first(t, is_gate(GateKind::kCnot, {kX, kY})),
                    a * ket("000") + b * ket("110") + a * ket("011") + b * ket("101"));
            compare("protocol1 after XOR(Y,Z)" + tag, after_first(t, is_gate(GateKind::kCnot, {kY, kZ})),
                    a * ket("000") + b * ket("111") + a * ket("010") + b * ket("101"));
            const StateVector &post_h = after_first(t, is_gate(GateKind::kHadamard, {kX}));
            compare("protocol1 after H(X), expanded" + tag, post_h,
                    a * (ket("000") + ket("100")) + b * (ket("011") - ket("111")) + a * (ket("010") + ket("110")) +
                        b * (ket("001") - ket("101")));
            compare("protocol1 after H(X), grouped" + tag, post_h,
                    ket("00") * phi + ket("01") * phi + ket("10") * phi_flip + ket("11") * phi_flip);
            compare("protocol1 after H(X), factored" + tag, post_h,
                    ket("0") * plus * phi + ket("1") * plus * phi_flip);
        });

        for (int mx : {0, 1}) {
            for (int my : {0, 1}) {
                std::string branch = " branch " + std::to_string(mx) + std::to_string(my);
                guarded("protocol1 collapse" + branch + tag, [&] {
                    ProtocolTrace t = run_forced(ProtocolId::kProtocol1, samples[si], std::vector{mx, my}, options);
                    auto idx = static_cast<std::size_t>(2 * mx + my);
                    compare("protocol1 Z after measuring X,Y" + branch + tag,
                            tail_state(after_first(t, is_measure(kY)), 2, idx), mx ? phi_flip : phi);
                    compare("protocol1 Z after correction" + branch + tag, tail_state(t.final_state(), 2, idx), phi);
                });
            }
        }

        guarded("protocol2 checkpoints" + tag, [&] {
            ProtocolTrace t = run_forced(ProtocolId::kProtocol2, samples[si], std::vector{0, 0, 0}, options);
            compare("protocol2 initial state" + tag, t.snapshots.front(),
                    a * ket("0000") + b * ket("1000") + a * ket("0111") + b * ket("1111"));
            compare("protocol2 after XOR(X,Y)" + tag, after_first(t, is_gate(GateKind::kCnot, {kX, kY})),
                    a * ket("0000") + b * ket("1100") + a * ket("0111") + b * ket("1011"));
            compare("protocol2 after XOR(Y,Z)" + tag, after_first(t, is_gate(GateKind::kCnot, {kY, kZ})),
                    a * ket("0000") + b * ket("1110") + a * ket("0101") + b * ket("1011"));
            const StateVector &post_h = after_first(t, is_gate(GateKind::kHadamard, {kX}));
            compare("protocol2 after H(X), expanded" + tag, post_h,
                    a * (ket("0000") + ket("1000")) + b * (ket("0110") - ket("1110")) +
                        a * (ket("0101") + ket("1101")) + b * (ket("0011") - ket("1011")));
            compare("protocol2 after H(X), grouped" + tag, post_h,
                    ket("00") * (a * ket("00") + b * ket("11")) + ket("01") * (a * ket("01") + b * ket("10")) +
                        ket("10") * (a * ket("00") - b * ket("11")) + ket("11") * (a * ket("01") - b * ket("10")));
        });

        const std::array<KetExpr, 4> collapsed = {
            a * ket("00") + b * ket("11"), a * ket("01") + b * ket("10"), a * ket("00") - b * ket("11"),
            a * ket("01") - b * ket("10")};
        const KetExpr shared = a * ket("00") + b * ket("11");
        for (int mx : {0, 1}) {
            for (int my : {0, 1}) {
                std::string branch = " branch " + std::to_string(mx) + std::to_string(my);
                auto idx = static_cast<std::size_t>(2 * mx + my);
                guarded("protocol2 branch" + branch + tag, [&] {
                    ProtocolTrace t = run_forced(ProtocolId::kProtocol2, samples[si], std::vector{mx, my, 0}, options);
                    compare("protocol2 Z,U after measuring X,Y" + branch + tag,
                            tail_state(after_first(t, is_measure(kY)), 2, idx), collapsed[idx]);
                    compare("protocol2 Z,U after corrections" + branch + tag,
                            tail_state(before_transfer_of(t, kU), 2, idx), shared);
                    compare("protocol2 Z,U after H(Z)" + branch + tag,
                            tail_state(after_first(t, is_gate(GateKind::kHadamard, {kZ})), 2, idx),
                            ket("0") * phi + ket("1") * phi_flip);
                });
                guarded("protocol2_variant branch" + branch + tag, [&] {
                    ProtocolTrace t =
                        run_forced(ProtocolId::kProtocol2Variant, samples[si], std::vector{mx, my, 0}, options);
                    compare("protocol2_variant Z,U before H(Z)" + branch + tag,
                            tail_state(before_first(t, is_gate(GateKind::kHadamard, {kZ})), 2, idx),
                            shared);
                });
            }
        }

        guarded("five-qubit chained XOR" + tag, [&] {
            std::array<QubitId, 5> chain{0, 1, 2, 3, 4};
            StateVector s = product_state(samples[si], ghz(4));
            if (options.flip_cnot) {
                for (std::size_t k = 0; k + 1 < chain.size(); k++) {
                    s = apply_cnot(s, chain[k + 1], chain[k]);
                }
            } else {
                s = chained_xor(s, chain);
            }
            compare("five-qubit chained XOR" + tag, s,
                    a * ket("00000") + b * ket("11111") + a * ket("01010") + b * ket("10101"));
        });
    }
    return report;
}

FrequencyAgreement monte_carlo_agreement(
    ProtocolId id, const QubitAmplitudes &unknown, std::size_t trials, std::uint64_t seed, const RunOptions &options) {
    std::map<std::vector<int>, double> expected;
    for (const auto &leaf : enumerate_branches(id, unknown, options).leaves) {
        expected[leaf.trace.outcome_bits()] = leaf.probability;
    }
    std::map<std::vector<int>, std::size_t> counts;
    for (std::size_t i = 0; i < trials; i++) {
        counts[run(id, unknown, seed + i, options).outcome_bits()]++;
    }
    double worst = 0;
    for (const auto &[bits, p] : expected) {
        double freq = static_cast<double>(counts[bits]) / static_cast<double>(trials);
        worst = std::max(worst, std::abs(freq - p));
    }
    for (const auto &[bits, n] : counts) {
        if (!expected.contains(bits)) {
            worst = std::max(worst, static_cast<double>(n) / static_cast<double>(trials));
        }
    }
    double tol = 4 / std::sqrt(static_cast<double>(trials));
    return {id, trials, worst, tol, worst <= tol};
}

CheckReport run_verification(const RunOptions &options) {
    CheckReport report;
    report.append(reference_state_regression(options));

    const auto generic = generic_samples();
    std::vector<QubitAmplitudes> samples(generic.begin(), generic.end());
    for (std::uint64_t k = 0; k < 8; k++) {
        samples.push_back(random_qubit(1000 + k));
    }

    for (ProtocolId id : kAllProtocols) {
        std::string name(protocol_name(id));
        try {
            double worst_fidelity = 0;
            double worst_sum = 0;
            double worst_bits = 0;
            bool leaf_count_ok = true;
            for (const auto &u : samples) {
                BranchTree tree = enumerate_branches(id, u, options);
                leaf_count_ok &= tree.leaves.size() == (std::size_t{1} << measurement_count(id));
                double total = 0;
                double bits = 0;
                for (const auto &leaf : tree.leaves) {
                    worst_fidelity = std::max(worst_fidelity, 1 - leaf.fidelity);
                    total += leaf.probability;
                    bits += leaf.probability * leaf.bits_sent;
                }
                worst_sum = std::max(worst_sum, std::abs(total - 1));
                worst_bits = std::max(worst_bits, std::abs(bits - expected_bits_for(id)));
            }
            report.checks.push_back(numeric_check("leaf fidelity " + name, worst_fidelity, kFidelityTolerance));
            report.checks.push_back(numeric_check("branch probabilities " + name, worst_sum, kAlgebraTolerance));
            report.checks.push_back({"leaf count " + name, leaf_count_ok, 0,
                                     "expected " + std::to_string(std::size_t{1} << measurement_count(id))});
            report.checks.push_back(numeric_check(
                "expected bits " + name, worst_bits, kAlgebraTolerance,
                "expected " + format_double(expected_bits_for(id)) + ", max error " + format_double(worst_bits)));
        } catch (const std::exception &e) {
            report.checks.push_back(failed("leaf fidelity " + name, e));
        }
    }

    for (ProtocolId id : kAllProtocols) {
        std::string name = "locality audit " + std::string(protocol_name(id));
        try {
            RunOptions record = options;
            record.locality = LocalityMode::kRecord;
            std::string detail = "100 seeded runs";
            bool ok = true;
            for (std::uint64_t seed = 0; seed < 100 && ok; seed++) {
                LocalityAudit audit = audit_locality(run(id, random_qubit(seed), seed, record));
                if (!audit.passed) {
                    ok = false;
                    detail = audit.message;
                }
            }
            report.checks.push_back({name, ok, 0, detail});
        } catch (const std::exception &e) {
            report.checks.push_back(failed(name, e));
        }
    }

    try {
        RunOptions early = options;
        early.locality = LocalityMode::kRecord;
        early.protocol1_ordering = Protocol1Ordering::kExchangedEarlyTransfer;
        LocalityAudit audit = audit_locality(run(ProtocolId::kProtocol1, generic_samples()[0], 0, early));
        report.checks.push_back({"early transfer with exchanged steps is rejected", !audit.passed, 0,
                                 audit.passed ? "audit unexpectedly passed" : audit.message});
    } catch (const std::exception &e) {
        report.checks.push_back(failed("early transfer with exchanged steps is rejected", e));
    }

    try {
        double worst = 0;
        bool audits = true;
        RunOptions exchanged = options;
        exchanged.protocol1_ordering = Protocol1Ordering::kExchanged;
        for (const auto &u : samples) {
            for (int mx : {0, 1}) {
                for (int my : {0, 1}) {
                    std::vector<int> bits{mx, my};
                    ProtocolTrace written = run_forced(ProtocolId::kProtocol1, u, bits, options);
                    ProtocolTrace swapped = run_forced(ProtocolId::kProtocol1, u, bits, exchanged);
                    worst = std::max(worst, written.final_state().max_abs_diff(swapped.final_state()));
                    audits &= audit_locality(swapped).passed;
                }
            }
        }
        report.checks.push_back(numeric_check("exchanged steps give the same final state", worst, kAlgebraTolerance));
        report.checks.push_back({"exchanged steps with late transfer pass the audit", audits, 0, ""});
    } catch (const std::exception &e) {
        report.checks.push_back(failed("exchanged steps give the same final state", e));
    }

    try {
        double worst = 0;
        for (std::uint64_t k = 0; k < 100; k++) {
            worst = std::max(worst, y_outcome_informativeness(random_qubit(k)));
        }
        report.checks.push_back(numeric_check("Y outcome carries no correction information", worst, kFidelityTolerance));
        double x_info = x_outcome_informativeness(generic_samples()[0]);
        report.checks.push_back(numeric_check("X outcome determines the correction", std::abs(x_info - 1),
                                              kFidelityTolerance, "I = " + format_double(x_info) + " bits"));
    } catch (const std::exception &e) {
        report.checks.push_back(failed("Y outcome carries no correction information", e));
    }

    for (ProtocolId id : kAllProtocols) {
        std::string name = "no-signaling " + std::string(protocol_name(id));
        try {
            double worst = 0;
            bool depends = false;
            for (std::size_t k = 0; k < 4; k++) {
                NoSignalingReport r = no_signaling_check(id, samples[k]);
                worst = std::max(worst, r.deviation);
                depends |= r.depends_on_unknown;
            }
            report.checks.push_back(numeric_check(
                name, worst, kFidelityTolerance,
                "max deviation " + format_double(worst) + "; receiver state " +
                    (depends ? "depends on" : "is independent of") + " the unknown state"));
        } catch (const std::exception &e) {
            report.checks.push_back(failed(name, e));
        }
    }

    for (ProtocolId id : kAllProtocols) {
        std::string name = "Monte-Carlo agreement " + std::string(protocol_name(id));
        try {
            FrequencyAgreement fa = monte_carlo_agreement(id, generic_samples()[1], 10000, 1, options);
            report.checks.push_back(numeric_check(name, fa.max_deviation, fa.tolerance));
        } catch (const std::exception &e) {
            report.checks.push_back(failed(name, e));
        }
    }

    try {
        const CorrectionTable &in_use =
            options.protocol2_step4_override ? *options.protocol2_step4_override : protocol2_step4_corrections();
        bool ok = true;
        for (const auto &u : generic_samples()) {
            ok &= derive_protocol2_step4_corrections(u) == in_use;
        }
        report.checks.push_back({"protocol2 correction table matches brute-force derivation", ok, 0, ""});
    } catch (const std::exception &e) {
        report.checks.push_back(failed("protocol2 correction table matches brute-force derivation", e));
    }
    return report;
}

}  // namespace teleportsim
