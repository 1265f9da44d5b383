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

#ifndef TELEPORTSIM_PROTOCOL_H
#define TELEPORTSIM_PROTOCOL_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "teleportsim/qsim.h"

namespace teleportsim {

enum class Party { kAlice, kBob, kBroker };

std::string_view party_name(Party party);
std::optional<Party> parse_party(std::string_view name);

enum class ProtocolId { kStandard, kProtocol1, kProtocol1Reversed, kProtocol2, kProtocol2Variant };

inline constexpr std::array<ProtocolId, 5> kAllProtocols = {
    ProtocolId::kStandard, ProtocolId::kProtocol1, ProtocolId::kProtocol1Reversed, ProtocolId::kProtocol2,
    ProtocolId::kProtocol2Variant};

std::string_view protocol_name(ProtocolId id);
std::optional<ProtocolId> parse_protocol(std::string_view name);

/// Qubit that ends up holding the teleported state.
QubitId destination_qubit(ProtocolId id);
/// Measurements performed by every complete run.
std::size_t measurement_count(ProtocolId id);

/// Conditional single-qubit operators used for corrections.
enum class CorrectionOp { kIdentity, kZ, kX, kIY };

inline constexpr std::array<CorrectionOp, 4> kAllCorrectionOps = {
    CorrectionOp::kIdentity, CorrectionOp::kZ, CorrectionOp::kX, CorrectionOp::kIY};

Unitary2 correction_matrix(CorrectionOp op);
std::string_view correction_name(CorrectionOp op);
std::optional<CorrectionOp> parse_correction(std::string_view name);

enum class GateKind { kHadamard, kCnot };

std::string_view gate_name(GateKind gate);
std::optional<GateKind> parse_gate(std::string_view name);

/// Current owner of every qubit in the register.
class PartyRegister {
   public:
    explicit PartyRegister(std::vector<Party> owners) : owners_(std::move(owners)) {}

    std::size_t size() const { return owners_.size(); }
    Party owner(QubitId q) const { return owners_.at(q); }
    bool owns(Party party, std::span<const QubitId> qubits) const;
    void transfer(QubitId q, Party to) { owners_.at(q) = to; }
    const std::vector<Party> &owners() const { return owners_; }

   private:
    std::vector<Party> owners_;
};

enum class EventKind { kGate, kTransfer, kMeasure, kClassicalMsg, kCorrection };

std::string_view event_kind_name(EventKind kind);

struct GateEvent {
    GateKind gate;
    std::vector<QubitId> qubits;
    bool operator==(const GateEvent &) const = default;
};

struct TransferEvent {
    QubitId qubit;
    Party from;
    Party to;
    bool operator==(const TransferEvent &) const = default;
};

struct MeasureEvent {
    QubitId qubit;
    int bit;
    double probability;
    bool operator==(const MeasureEvent &) const = default;
};

struct MessageEvent {
    std::vector<int> bits;
    Party sender;
    Party receiver;
    bool operator==(const MessageEvent &) const = default;
};

struct CorrectionEvent {
    CorrectionOp op;
    QubitId qubit;
    bool operator==(const CorrectionEvent &) const = default;
};

/// Alternatives are ordered like EventKind.
using EventPayload = std::variant<GateEvent, TransferEvent, MeasureEvent, MessageEvent, CorrectionEvent>;

struct TraceEvent {
    Party actor;
    EventPayload payload;

    EventKind kind() const { return static_cast<EventKind>(payload.index()); }
    /// Qubits a Gate/Measure/Correction acts on; empty for other kinds.
    std::vector<QubitId> acted_qubits() const;
    bool operator==(const TraceEvent &) const = default;
};

struct ProtocolTrace {
    ProtocolId protocol;
    std::uint64_t seed = 0;
    QubitAmplitudes unknown;
    std::vector<std::string> qubit_names;
    std::vector<Party> initial_owners;
    QubitId destination = 0;
    std::vector<TraceEvent> events;
    int classical_bits_sent = 0;
    /// Synchronous communication rounds, including rounds in which nothing was sent.
    int classical_rounds = 0;
    double final_fidelity = 0;
    /// Set when the run stopped just before its first classical message.
    bool halted = false;

    /// snapshots[0] is the initial state, snapshots[i + 1] the state after
    /// events[i]. Not part of the serialized form.
    std::vector<StateVector> snapshots;

    const StateVector &final_state() const { return snapshots.back(); }
    /// Measurement bits in the order they were taken.
    std::vector<int> outcome_bits() const;
};

/// (party, qubit, operator) entries applied when a given outcome tuple is observed.
struct Correction {
    Party party;
    QubitId qubit;
    CorrectionOp op;
    bool operator==(const Correction &) const = default;
};

class CorrectionTable {
   public:
    CorrectionTable() = default;
    CorrectionTable(std::initializer_list<std::pair<const std::vector<int>, std::vector<Correction>>> entries)
        : entries_(entries) {}

    void set(std::vector<int> outcome, std::vector<Correction> corrections) {
        entries_[std::move(outcome)] = std::move(corrections);
    }
    /// Throws std::out_of_range for an outcome tuple with no entry.
    const std::vector<Correction> &at(std::span<const int> outcome) const;
    const std::map<std::vector<int>, std::vector<Correction>> &entries() const { return entries_; }
    bool operator==(const CorrectionTable &) const = default;

   private:
    std::map<std::vector<int>, std::vector<Correction>> entries_;
};

/// Standard teleportation: (X bit, Y bit) -> Bob's operator on Z.
const CorrectionTable &standard_corrections();
/// X bit -> Bob's operator on Z. Y's bit plays no part.
const CorrectionTable &protocol1_corrections();
/// Z bit -> Alice's operator on X.
const CorrectionTable &protocol1_reversed_corrections();
/// (X bit, Y bit) -> Alice's operator(s) on (Z, U) restoring a|00> + b|11>.
const CorrectionTable &protocol2_step4_corrections();
/// Z bit -> Bob's operator on U. Shared by the three-particle protocol and its variant.
const CorrectionTable &protocol2_final_corrections();
/// (X bit, Y bit) -> Bob's operator on U. A classical bit is sent iff the entry is nonempty.
const CorrectionTable &variant_remote_corrections();
/// (X bit, Y bit) -> Alice's local phase operator on Z.
const CorrectionTable &variant_local_corrections();

enum class LocalityMode {
    /// Throw LocalityError at the first violating event.
    kEnforce,
    /// Record violating events and keep going; audit_locality reports them.
    kRecord,
};

/// Event orderings for the chained-XOR protocol.
enum class Protocol1Ordering {
    kAsWritten,
    /// H(X) before XOR(Y,Z), with Z transferred after both.
    kExchanged,
    /// H(X) before XOR(Y,Z), with Z transferred before XOR(Y,Z). Violates locality.
    kExchangedEarlyTransfer,
};

struct RunOptions {
    LocalityMode locality = LocalityMode::kEnforce;
    Protocol1Ordering protocol1_ordering = Protocol1Ordering::kAsWritten;
    /// Replaces protocol2_step4_corrections() in the three-particle protocol.
    std::optional<CorrectionTable> protocol2_step4_override;
    /// Fault injection: every CNOT acts with control and target swapped.
    bool flip_cnot = false;
    /// Stop right before the first classical message is sent.
    bool halt_before_first_message = false;
};

struct LocalityError : std::runtime_error {
    LocalityError(std::size_t event_index, const std::string &what)
        : std::runtime_error(what), event_index(event_index) {}
    std::size_t event_index;
};

/// Thrown by run_forced when the protocol asks for more outcomes than supplied.
struct OutcomesExhausted : std::runtime_error {
    explicit OutcomesExhausted(std::size_t measurement_index)
        : std::runtime_error("forced outcome list exhausted"), measurement_index(measurement_index) {}
    std::size_t measurement_index;
};

/// Runs a protocol, drawing measurement outcomes from UniformStream(seed).
ProtocolTrace run(ProtocolId id, const QubitAmplitudes &unknown, std::uint64_t seed, const RunOptions &options = {});

/// Runs a protocol with measurement outcomes taken in order from outcomes.
ProtocolTrace run_forced(
    ProtocolId id, const QubitAmplitudes &unknown, std::span<const int> outcomes, const RunOptions &options = {});

ProtocolTrace run_standard(const QubitAmplitudes &unknown, std::uint64_t seed);
ProtocolTrace run_protocol1(const QubitAmplitudes &unknown, std::uint64_t seed);
ProtocolTrace run_protocol1_reversed(const QubitAmplitudes &unknown, std::uint64_t seed);
ProtocolTrace run_protocol2(const QubitAmplitudes &unknown, std::uint64_t seed);
ProtocolTrace run_protocol2_variant(const QubitAmplitudes &unknown, std::uint64_t seed);

struct LocalityAudit {
    bool passed = true;
    std::optional<std::size_t> violation_index;
    std::string message;
};

/// Replays ownership from trace.initial_owners and reports the first event
/// that acts on a qubit its actor does not hold, sends a message that does
/// not cross parties, or involves the Broker outside initial distribution.
LocalityAudit audit_locality(const ProtocolTrace &trace);

/// Re-executes the recorded events from the unknown state, forcing the
/// recorded measurement bits. Returns a trace with recomputed probabilities,
/// bit count, fidelity and snapshots.
ProtocolTrace replay(const ProtocolTrace &trace);

}  // namespace teleportsim

#endif
