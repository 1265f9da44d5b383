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

#include "teleportsim/protocol.h"

#include <algorithm>

#include "teleportsim/rng.h"

namespace teleportsim {

namespace {

constexpr QubitId kX = 0;
constexpr QubitId kY = 1;
constexpr QubitId kZ = 2;
constexpr QubitId kU = 3;

constexpr Party kAlice = Party::kAlice;
constexpr Party kBob = Party::kBob;
constexpr Party kBroker = Party::kBroker;

/// Halts a run at its first classical message (RunOptions::halt_before_first_message).
struct HaltSignal {};

/// Applies events to the state while maintaining ownership, the event log,
/// bit accounting and per-event snapshots. One instance per run.
class Executor {
   public:
    Executor(
        ProtocolId id,
        const QubitAmplitudes &unknown,
        std::vector<std::string> names,
        std::vector<Party> owners,
        const RunOptions &options)
        : options_(options), register_(owners) {
        unknown.validate();
        trace_.protocol = id;
        trace_.unknown = unknown;
        trace_.qubit_names = std::move(names);
        trace_.initial_owners = std::move(owners);
        trace_.destination = destination_qubit(id);
        trace_.snapshots.push_back(product_state(unknown, ghz(trace_.qubit_names.size() - 1)));
    }

    void use_random(std::uint64_t seed) {
        trace_.seed = seed;
        stream_.emplace(seed);
    }

    void use_forced(std::span<const int> outcomes) { forced_ = outcomes; }

    const RunOptions &options() const { return options_; }

    /// Broker hands an entangled resource qubit to its first holder.
    void distribute(QubitId q, Party to) { record(kBroker, TransferEvent{q, kBroker, to}, state()); }

    void hadamard(Party actor, QubitId q) {
        check_local(actor, {q});
        record(actor, GateEvent{GateKind::kHadamard, {q}}, apply_single(state(), gates::hadamard(), q));
    }

    void cnot(Party actor, QubitId control, QubitId target) {
        check_local(actor, {control, target});
        StateVector next =
            options_.flip_cnot ? apply_cnot(state(), target, control) : apply_cnot(state(), control, target);
        record(actor, GateEvent{GateKind::kCnot, {control, target}}, std::move(next));
    }

    void transfer(QubitId q, Party from, Party to) {
        if (register_.owner(q) != from) {
            violation(
                "transfer of " + trace_.qubit_names[q] + " by " + std::string(party_name(from)) +
                ", which does not hold it");
        }
        record(from, TransferEvent{q, from, to}, state());
    }

    int measure(Party actor, QubitId q) {
        check_local(actor, {q});
        int bit = 0;
        std::optional<std::pair<MeasurementOutcome, StateVector>> result;
        if (stream_) {
            result = teleportsim::measure(state(), q, stream_->next_unit());
        } else {
            if (measurements_ >= forced_.size()) {
                throw OutcomesExhausted(measurements_);
            }
            result = project(state(), q, forced_[measurements_]);
        }
        measurements_++;
        bit = result->first.bit;
        record(actor, MeasureEvent{q, bit, result->first.probability}, std::move(result->second));
        return bit;
    }

    void send(Party from, Party to, std::vector<int> bits) {
        if (options_.halt_before_first_message && messages_ == 0) {
            throw HaltSignal{};
        }
        messages_++;
        trace_.classical_rounds++;
        trace_.classical_bits_sent += static_cast<int>(bits.size());
        record(from, MessageEvent{std::move(bits), from, to}, state());
    }

    /// A communication round in which nothing is transmitted.
    void silent_round() { trace_.classical_rounds++; }

    void correct(Party actor, CorrectionOp op, QubitId q) {
        check_local(actor, {q});
        record(actor, CorrectionEvent{op, q}, apply_single(state(), correction_matrix(op), q));
    }

    void apply(std::span<const Correction> corrections) {
        for (const auto &c : corrections) {
            correct(c.party, c.op, c.qubit);
        }
    }

    ProtocolTrace finish(bool halted) {
        trace_.halted = halted;
        QubitId dest = trace_.destination;
        trace_.final_fidelity =
            fidelity(reduced_density(state(), std::span<const QubitId>(&dest, 1)), qubit_state(trace_.unknown));
        return std::move(trace_);
    }

   private:
    const StateVector &state() const { return trace_.snapshots.back(); }

    void check_local(Party actor, std::initializer_list<QubitId> qubits) {
        std::vector<QubitId> qs(qubits);
        if (!register_.owns(actor, qs)) {
            std::string names;
            for (QubitId q : qs) {
                names += (names.empty() ? "" : ",") + trace_.qubit_names[q] + "@" +
                         std::string(party_name(register_.owner(q)));
            }
            violation(std::string(party_name(actor)) + " acts on qubits it does not hold: " + names);
        }
    }

    void violation(const std::string &message) {
        if (options_.locality == LocalityMode::kEnforce) {
            throw LocalityError(trace_.events.size(), "event " + std::to_string(trace_.events.size()) + ": " + message);
        }
    }

    void record(Party actor, EventPayload payload, StateVector next) {
        if (const auto *t = std::get_if<TransferEvent>(&payload)) {
            register_.transfer(t->qubit, t->to);
        }
        trace_.events.push_back(TraceEvent{actor, std::move(payload)});
        trace_.snapshots.push_back(std::move(next));
    }

    const RunOptions &options_;
    PartyRegister register_;
    ProtocolTrace trace_;
    std::optional<UniformStream> stream_;
    std::span<const int> forced_;
    std::size_t measurements_ = 0;
    std::size_t messages_ = 0;
};

void body_standard(Executor &ex) {
    ex.distribute(kZ, kBob);
    ex.distribute(kY, kAlice);
    ex.cnot(kAlice, kX, kY);
    ex.hadamard(kAlice, kX);
    int mx = ex.measure(kAlice, kX);
    int my = ex.measure(kAlice, kY);
    ex.send(kAlice, kBob, {mx, my});
    ex.apply(standard_corrections().at(std::vector{mx, my}));
}

void body_protocol1(Executor &ex) {
    ex.distribute(kY, kAlice);
    ex.distribute(kZ, kAlice);
    ex.cnot(kAlice, kX, kY);
    switch (ex.options().protocol1_ordering) {
        case Protocol1Ordering::kAsWritten:
            ex.cnot(kAlice, kY, kZ);
            ex.transfer(kZ, kAlice, kBob);
            ex.hadamard(kAlice, kX);
            break;
        case Protocol1Ordering::kExchanged:
            ex.hadamard(kAlice, kX);
            ex.cnot(kAlice, kY, kZ);
            ex.transfer(kZ, kAlice, kBob);
            break;
        case Protocol1Ordering::kExchangedEarlyTransfer:
            ex.transfer(kZ, kAlice, kBob);
            ex.hadamard(kAlice, kX);
            ex.cnot(kAlice, kY, kZ);
            break;
    }
    int mx = ex.measure(kAlice, kX);
    ex.measure(kAlice, kY);
    ex.send(kAlice, kBob, {mx});
    ex.apply(protocol1_corrections().at(std::vector{mx}));
}

void body_protocol1_reversed(Executor &ex) {
    ex.distribute(kY, kAlice);
    ex.distribute(kZ, kAlice);
    ex.cnot(kAlice, kX, kY);
    ex.cnot(kAlice, kY, kZ);
    ex.transfer(kZ, kAlice, kBob);
    ex.hadamard(kBob, kZ);
    int mz = ex.measure(kBob, kZ);
    ex.send(kBob, kAlice, {mz});
    ex.apply(protocol1_reversed_corrections().at(std::vector{mz}));
}

void body_protocol2(Executor &ex) {
    ex.distribute(kY, kAlice);
    ex.distribute(kZ, kAlice);
    ex.distribute(kU, kAlice);
    ex.cnot(kAlice, kX, kY);
    ex.cnot(kAlice, kY, kZ);
    ex.hadamard(kAlice, kX);
    int mx = ex.measure(kAlice, kX);
    int my = ex.measure(kAlice, kY);
    const CorrectionTable &step4 = ex.options().protocol2_step4_override ? *ex.options().protocol2_step4_override
                                                                         : protocol2_step4_corrections();
    ex.apply(step4.at(std::vector{mx, my}));
    ex.transfer(kU, kAlice, kBob);
    ex.hadamard(kAlice, kZ);
    int mz = ex.measure(kAlice, kZ);
    ex.send(kAlice, kBob, {mz});
    ex.apply(protocol2_final_corrections().at(std::vector{mz}));
}

void body_protocol2_variant(Executor &ex) {
    ex.distribute(kU, kBob);
    ex.distribute(kY, kAlice);
    ex.distribute(kZ, kAlice);
    ex.cnot(kAlice, kX, kY);
    ex.cnot(kAlice, kY, kZ);
    ex.hadamard(kAlice, kX);
    int mx = ex.measure(kAlice, kX);
    int my = ex.measure(kAlice, kY);
    std::vector<int> key{mx, my};
    const auto &remote = variant_remote_corrections().at(key);
    if (remote.empty()) {
        ex.silent_round();
    } else {
        ex.send(kAlice, kBob, {1});
        ex.apply(remote);
    }
    ex.apply(variant_local_corrections().at(key));
    ex.hadamard(kAlice, kZ);
    int mz = ex.measure(kAlice, kZ);
    ex.send(kAlice, kBob, {mz});
    ex.apply(protocol2_final_corrections().at(std::vector{mz}));
}

struct ProtocolShape {
    std::vector<std::string> names;
    std::vector<Party> owners;
    void (*body)(Executor &);
};

ProtocolShape shape_of(ProtocolId id) {
    switch (id) {
        case ProtocolId::kStandard:
            return {{"X", "Y", "Z"}, {kAlice, kBroker, kBroker}, body_standard};
        case ProtocolId::kProtocol1:
            return {{"X", "Y", "Z"}, {kAlice, kBroker, kBroker}, body_protocol1};
        case ProtocolId::kProtocol1Reversed:
            return {{"X", "Y", "Z"}, {kAlice, kBroker, kBroker}, body_protocol1_reversed};
        case ProtocolId::kProtocol2:
            return {{"X", "Y", "Z", "U"}, {kAlice, kBroker, kBroker, kBroker}, body_protocol2};
        case ProtocolId::kProtocol2Variant:
            return {{"X", "Y", "Z", "U"}, {kAlice, kBroker, kBroker, kBroker}, body_protocol2_variant};
    }
    throw std::invalid_argument("unknown protocol");
}

ProtocolTrace execute(Executor &ex, void (*body)(Executor &)) {
    try {
        body(ex);
    } catch (const HaltSignal &) {
        return ex.finish(true);
    }
    return ex.finish(false);
}

}  // namespace

std::string_view party_name(Party party) {
    switch (party) {
        case Party::kAlice:
            return "Alice";
        case Party::kBob:
            return "Bob";
        case Party::kBroker:
            return "Broker";
    }
    return "?";
}

std::optional<Party> parse_party(std::string_view name) {
    for (Party p : {Party::kAlice, Party::kBob, Party::kBroker}) {
        if (party_name(p) == name) {
            return p;
        }
    }
    return std::nullopt;
}

std::string_view protocol_name(ProtocolId id) {
    switch (id) {
        case ProtocolId::kStandard:
            return "standard";
        case ProtocolId::kProtocol1:
            return "protocol1";
        case ProtocolId::kProtocol1Reversed:
            return "protocol1_reversed";
        case ProtocolId::kProtocol2:
            return "protocol2";
        case ProtocolId::kProtocol2Variant:
            return "protocol2_variant";
    }
    return "?";
}

std::optional<ProtocolId> parse_protocol(std::string_view name) {
    for (ProtocolId id : kAllProtocols) {
        if (protocol_name(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

QubitId destination_qubit(ProtocolId id) {
    switch (id) {
        case ProtocolId::kStandard:
        case ProtocolId::kProtocol1:
            return kZ;
        case ProtocolId::kProtocol1Reversed:
            return kX;
        case ProtocolId::kProtocol2:
        case ProtocolId::kProtocol2Variant:
            return kU;
    }
    throw std::invalid_argument("unknown protocol");
}

std::size_t measurement_count(ProtocolId id) {
    switch (id) {
        case ProtocolId::kStandard:
        case ProtocolId::kProtocol1:
            return 2;
        case ProtocolId::kProtocol1Reversed:
            return 1;
        case ProtocolId::kProtocol2:
        case ProtocolId::kProtocol2Variant:
            return 3;
    }
    throw std::invalid_argument("unknown protocol");
}

Unitary2 correction_matrix(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::kIdentity:
            return gates::identity();
        case CorrectionOp::kZ:
            return gates::pauli_z();
        case CorrectionOp::kX:
            return gates::pauli_x();
        case CorrectionOp::kIY:
            return gates::i_pauli_y();
    }
    throw std::invalid_argument("unknown correction");
}

std::string_view correction_name(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::kIdentity:
            return "I";
        case CorrectionOp::kZ:
            return "Z";
        case CorrectionOp::kX:
            return "X";
        case CorrectionOp::kIY:
            return "iY";
    }
    return "?";
}

std::optional<CorrectionOp> parse_correction(std::string_view name) {
    for (CorrectionOp op : kAllCorrectionOps) {
        if (correction_name(op) == name) {
            return op;
        }
    }
    return std::nullopt;
}

std::string_view gate_name(GateKind gate) {
    return gate == GateKind::kHadamard ? "H" : "CNOT";
}

std::optional<GateKind> parse_gate(std::string_view name) {
    if (name == "H") {
        return GateKind::kHadamard;
    }
    if (name == "CNOT") {
        return GateKind::kCnot;
    }
    return std::nullopt;
}

bool PartyRegister::owns(Party party, std::span<const QubitId> qubits) const {
    return std::all_of(qubits.begin(), qubits.end(), [&](QubitId q) { return q < owners_.size() && owners_[q] == party; });
}

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::kGate:
            return "Gate";
        case EventKind::kTransfer:
            return "Transfer";
        case EventKind::kMeasure:
            return "Measure";
        case EventKind::kClassicalMsg:
            return "ClassicalMsg";
        case EventKind::kCorrection:
            return "Correction";
    }
    return "?";
}

std::vector<QubitId> TraceEvent::acted_qubits() const {
    if (const auto *g = std::get_if<GateEvent>(&payload)) {
        return g->qubits;
    }
    if (const auto *m = std::get_if<MeasureEvent>(&payload)) {
        return {m->qubit};
    }
    if (const auto *c = std::get_if<CorrectionEvent>(&payload)) {
        return {c->qubit};
    }
    return {};
}

std::vector<int> ProtocolTrace::outcome_bits() const {
    std::vector<int> bits;
    for (const auto &e : events) {
        if (const auto *m = std::get_if<MeasureEvent>(&e.payload)) {
            bits.push_back(m->bit);
        }
    }
    return bits;
}

const std::vector<Correction> &CorrectionTable::at(std::span<const int> outcome) const {
    auto it = entries_.find(std::vector<int>(outcome.begin(), outcome.end()));
    if (it == entries_.end()) {
        throw std::out_of_range("no correction entry for outcome");
    }
    return it->second;
}

const CorrectionTable &standard_corrections() {
    static const CorrectionTable table{
        {{0, 0}, {{kBob, kZ, CorrectionOp::kIdentity}}},
        {{0, 1}, {{kBob, kZ, CorrectionOp::kX}}},
        {{1, 0}, {{kBob, kZ, CorrectionOp::kZ}}},
        {{1, 1}, {{kBob, kZ, CorrectionOp::kIY}}},
    };
    return table;
}

const CorrectionTable &protocol1_corrections() {
    static const CorrectionTable table{
        {{0}, {{kBob, kZ, CorrectionOp::kIdentity}}},
        {{1}, {{kBob, kZ, CorrectionOp::kZ}}},
    };
    return table;
}

const CorrectionTable &protocol1_reversed_corrections() {
    static const CorrectionTable table{
        {{0}, {{kAlice, kX, CorrectionOp::kIdentity}}},
        {{1}, {{kAlice, kX, CorrectionOp::kZ}}},
    };
    return table;
}

const CorrectionTable &protocol2_step4_corrections() {
    static const CorrectionTable table{
        {{0, 0}, {{kAlice, kU, CorrectionOp::kIdentity}}},
        {{0, 1}, {{kAlice, kU, CorrectionOp::kX}}},
        {{1, 0}, {{kAlice, kU, CorrectionOp::kZ}}},
        {{1, 1}, {{kAlice, kU, CorrectionOp::kIY}}},
    };
    return table;
}

const CorrectionTable &protocol2_final_corrections() {
    static const CorrectionTable table{
        {{0}, {{kBob, kU, CorrectionOp::kIdentity}}},
        {{1}, {{kBob, kU, CorrectionOp::kZ}}},
    };
    return table;
}

const CorrectionTable &variant_remote_corrections() {
    static const CorrectionTable table{
        {{0, 0}, {}},
        {{0, 1}, {{kBob, kU, CorrectionOp::kX}}},
        {{1, 0}, {}},
        {{1, 1}, {{kBob, kU, CorrectionOp::kX}}},
    };
    return table;
}

const CorrectionTable &variant_local_corrections() {
    static const CorrectionTable table{
        {{0, 0}, {{kAlice, kZ, CorrectionOp::kIdentity}}},
        {{0, 1}, {{kAlice, kZ, CorrectionOp::kIdentity}}},
        {{1, 0}, {{kAlice, kZ, CorrectionOp::kZ}}},
        {{1, 1}, {{kAlice, kZ, CorrectionOp::kZ}}},
    };
    return table;
}

ProtocolTrace run(ProtocolId id, const QubitAmplitudes &unknown, std::uint64_t seed, const RunOptions &options) {
    ProtocolShape shape = shape_of(id);
    Executor ex(id, unknown, std::move(shape.names), std::move(shape.owners), options);
    ex.use_random(seed);
    return execute(ex, shape.body);
}

ProtocolTrace run_forced(
    ProtocolId id, const QubitAmplitudes &unknown, std::span<const int> outcomes, const RunOptions &options) {
    ProtocolShape shape = shape_of(id);
    Executor ex(id, unknown, std::move(shape.names), std::move(shape.owners), options);
    ex.use_forced(outcomes);
    return execute(ex, shape.body);
}

ProtocolTrace run_standard(const QubitAmplitudes &unknown, std::uint64_t seed) {
    return run(ProtocolId::kStandard, unknown, seed);
}

ProtocolTrace run_protocol1(const QubitAmplitudes &unknown, std::uint64_t seed) {
    return run(ProtocolId::kProtocol1, unknown, seed);
}

ProtocolTrace run_protocol1_reversed(const QubitAmplitudes &unknown, std::uint64_t seed) {
    return run(ProtocolId::kProtocol1Reversed, unknown, seed);
}

ProtocolTrace run_protocol2(const QubitAmplitudes &unknown, std::uint64_t seed) {
    return run(ProtocolId::kProtocol2, unknown, seed);
}

ProtocolTrace run_protocol2_variant(const QubitAmplitudes &unknown, std::uint64_t seed) {
    return run(ProtocolId::kProtocol2Variant, unknown, seed);
}

LocalityAudit audit_locality(const ProtocolTrace &trace) {
    PartyRegister reg(trace.initial_owners);
    bool distributing = true;
    auto fail = [](std::size_t i, std::string message) {
        return LocalityAudit{false, i, "event " + std::to_string(i) + ": " + std::move(message)};
    };
    auto qubit_label = [&](QubitId q) {
        return q < trace.qubit_names.size() ? trace.qubit_names[q] : std::to_string(q);
    };

    for (std::size_t i = 0; i < trace.events.size(); i++) {
        const TraceEvent &e = trace.events[i];
        std::string actor(party_name(e.actor));
        if (e.actor == kBroker) {
            const auto *t = std::get_if<TransferEvent>(&e.payload);
            if (!distributing || t == nullptr) {
                return fail(i, "Broker acts outside initial distribution");
            }
        } else {
            distributing = false;
        }

        switch (e.kind()) {
            case EventKind::kGate:
            case EventKind::kMeasure:
            case EventKind::kCorrection: {
                for (QubitId q : e.acted_qubits()) {
                    if (q >= reg.size()) {
                        return fail(i, "qubit index " + std::to_string(q) + " outside the register");
                    }
                    if (reg.owner(q) != e.actor) {
                        std::string what = e.kind() == EventKind::kGate && e.acted_qubits().size() > 1
                                               ? "cross-party gate: "
                                               : "non-local operation: ";
                        return fail(
                            i, what + actor + " acts on " + qubit_label(q) + " held by " +
                                   std::string(party_name(reg.owner(q))));
                    }
                }
                break;
            }
            case EventKind::kTransfer: {
                const auto &t = std::get<TransferEvent>(e.payload);
                if (t.qubit >= reg.size()) {
                    return fail(i, "qubit index " + std::to_string(t.qubit) + " outside the register");
                }
                if (t.from != e.actor || reg.owner(t.qubit) != t.from) {
                    return fail(i, "transfer of " + qubit_label(t.qubit) + " not initiated by its holder");
                }
                if (t.to == t.from || t.to == kBroker) {
                    return fail(i, "transfer of " + qubit_label(t.qubit) + " to an invalid party");
                }
                reg.transfer(t.qubit, t.to);
                break;
            }
            case EventKind::kClassicalMsg: {
                const auto &m = std::get<MessageEvent>(e.payload);
                if (m.sender != e.actor || m.sender == m.receiver || m.receiver == kBroker) {
                    return fail(i, "classical message does not cross parties");
                }
                if (m.bits.empty()) {
                    return fail(i, "empty classical message");
                }
                break;
            }
        }
    }
    return {};
}

ProtocolTrace replay(const ProtocolTrace &trace) {
    RunOptions options;
    options.locality = LocalityMode::kRecord;
    std::vector<std::string> names = trace.qubit_names;
    Executor ex(trace.protocol, trace.unknown, std::move(names), trace.initial_owners, options);
    std::vector<int> bits = trace.outcome_bits();
    ex.use_forced(bits);
    for (const auto &e : trace.events) {
        std::visit(
            [&](const auto &p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GateEvent>) {
                    if (p.gate == GateKind::kHadamard) {
                        ex.hadamard(e.actor, p.qubits.at(0));
                    } else {
                        ex.cnot(e.actor, p.qubits.at(0), p.qubits.at(1));
                    }
                } else if constexpr (std::is_same_v<T, TransferEvent>) {
                    if (p.from == kBroker) {
                        ex.distribute(p.qubit, p.to);
                    } else {
                        ex.transfer(p.qubit, p.from, p.to);
                    }
                } else if constexpr (std::is_same_v<T, MeasureEvent>) {
                    ex.measure(e.actor, p.qubit);
                } else if constexpr (std::is_same_v<T, MessageEvent>) {
                    ex.send(p.sender, p.receiver, p.bits);
                } else {
                    ex.correct(e.actor, p.op, p.qubit);
                }
            },
            e.payload);
    }
    ProtocolTrace out = ex.finish(trace.halted);
    out.seed = trace.seed;
    out.classical_rounds = trace.classical_rounds;
    return out;
}

}  // namespace teleportsim
