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

#include "teleportsim/trace_io.h"

#include <charconv>
#include <sstream>

#include "teleportsim/text.h"

namespace teleportsim {

namespace {

std::string join_bits(const std::vector<int> &bits) {
    std::string out;
    for (std::size_t i = 0; i < bits.size(); i++) {
        out += (i ? "," : "") + std::to_string(bits[i]);
    }
    return out;
}

/// Fields of one record line, consumed strictly in order.
class Record {
   public:
    Record(std::string_view line, std::size_t line_no) : line_no_(line_no) {
        auto parts = split(line, ' ');
        tag_ = parts.front();
        for (std::size_t i = 1; i < parts.size(); i++) {
            auto eq = parts[i].find('=');
            if (eq == std::string_view::npos) {
                fail("malformed field '" + std::string(parts[i]) + "'");
            }
            fields_.emplace_back(parts[i].substr(0, eq), parts[i].substr(eq + 1));
        }
    }

    std::string_view tag() const { return tag_; }

    std::string_view next(std::string_view key) {
        if (pos_ >= fields_.size() || fields_[pos_].first != key) {
            fail("expected field '" + std::string(key) + "'");
        }
        return fields_[pos_++].second;
    }

    void done() {
        if (pos_ != fields_.size()) {
            fail("unexpected field '" + std::string(fields_[pos_].first) + "'");
        }
    }

    std::uint64_t next_u64(std::string_view key) {
        auto text = next(key);
        std::uint64_t v = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
            fail("bad integer for '" + std::string(key) + "'");
        }
        return v;
    }

    double next_double(std::string_view key) {
        auto v = parse_double(next(key));
        if (!v) {
            fail("bad number for '" + std::string(key) + "'");
        }
        return *v;
    }

    Complex next_complex(std::string_view key) {
        auto v = parse_complex(next(key));
        if (!v) {
            fail("bad complex literal for '" + std::string(key) + "'");
        }
        return *v;
    }

    Party next_party(std::string_view key) {
        auto p = parse_party(next(key));
        if (!p) {
            fail("bad party for '" + std::string(key) + "'");
        }
        return *p;
    }

    int next_bit(std::string_view text) {
        if (text == "0") {
            return 0;
        }
        if (text == "1") {
            return 1;
        }
        fail("bad bit '" + std::string(text) + "'");
    }

    [[noreturn]] void fail(const std::string &what) const { throw TraceFormatError(line_no_, what); }

   private:
    std::size_t line_no_;
    std::string_view tag_;
    std::vector<std::pair<std::string_view, std::string_view>> fields_;
    std::size_t pos_ = 0;
};

QubitId qubit_by_name(const ProtocolTrace &trace, std::string_view name, const Record &rec) {
    for (QubitId q = 0; q < trace.qubit_names.size(); q++) {
        if (trace.qubit_names[q] == name) {
            return q;
        }
    }
    rec.fail("unknown qubit '" + std::string(name) + "'");
}

}  // namespace

std::string serialize_trace(const ProtocolTrace &trace) {
    std::ostringstream out;
    const auto &names = trace.qubit_names;
    out << "trace protocol=" << protocol_name(trace.protocol) << " seed=" << trace.seed
        << " a=" << format_complex(trace.unknown.a) << " b=" << format_complex(trace.unknown.b) << " qubits=";
    for (std::size_t i = 0; i < names.size(); i++) {
        out << (i ? "," : "") << names[i];
    }
    out << " owners=";
    for (std::size_t i = 0; i < trace.initial_owners.size(); i++) {
        out << (i ? "," : "") << party_name(trace.initial_owners[i]);
    }
    out << " destination=" << names.at(trace.destination) << "\n";

    for (std::size_t i = 0; i < trace.events.size(); i++) {
        const TraceEvent &e = trace.events[i];
        out << "event step=" << i << " kind=" << event_kind_name(e.kind()) << " actor=" << party_name(e.actor);
        std::visit(
            [&](const auto &p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GateEvent>) {
                    out << " gate=" << gate_name(p.gate) << " qubits=";
                    for (std::size_t k = 0; k < p.qubits.size(); k++) {
                        out << (k ? "," : "") << names.at(p.qubits[k]);
                    }
                } else if constexpr (std::is_same_v<T, TransferEvent>) {
                    out << " qubit=" << names.at(p.qubit) << " from=" << party_name(p.from)
                        << " to=" << party_name(p.to);
                } else if constexpr (std::is_same_v<T, MeasureEvent>) {
                    out << " qubit=" << names.at(p.qubit) << " bit=" << p.bit
                        << " probability=" << format_double(p.probability);
                } else if constexpr (std::is_same_v<T, MessageEvent>) {
                    out << " from=" << party_name(p.sender) << " to=" << party_name(p.receiver)
                        << " bits=" << join_bits(p.bits);
                } else {
                    out << " op=" << correction_name(p.op) << " qubit=" << names.at(p.qubit);
                }
            },
            e.payload);
        out << "\n";
    }

    out << "end bits=" << trace.classical_bits_sent << " rounds=" << trace.classical_rounds
        << " fidelity=" << format_double(trace.final_fidelity) << " seed=" << trace.seed
        << " halted=" << (trace.halted ? 1 : 0) << "\n";
    return out.str();
}

ProtocolTrace parse_trace(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.size() < 2) {
        throw TraceFormatError(lines.size(), "trace needs a header and a footer");
    }

    ProtocolTrace trace{};
    Record header(lines.front(), 1);
    if (header.tag() != "trace") {
        header.fail("expected 'trace' header");
    }
    auto protocol = parse_protocol(header.next("protocol"));
    if (!protocol) {
        header.fail("unknown protocol");
    }
    trace.protocol = *protocol;
    trace.seed = header.next_u64("seed");
    trace.unknown.a = header.next_complex("a");
    trace.unknown.b = header.next_complex("b");
    for (auto name : split(header.next("qubits"), ',')) {
        trace.qubit_names.emplace_back(name);
    }
    for (auto name : split(header.next("owners"), ',')) {
        auto p = parse_party(name);
        if (!p) {
            header.fail("bad owner '" + std::string(name) + "'");
        }
        trace.initial_owners.push_back(*p);
    }
    if (trace.initial_owners.size() != trace.qubit_names.size()) {
        header.fail("owner count does not match qubit count");
    }
    trace.destination = qubit_by_name(trace, header.next("destination"), header);
    header.done();

    for (std::size_t li = 1; li + 1 < lines.size(); li++) {
        Record rec(lines[li], li + 1);
        if (rec.tag() != "event") {
            rec.fail("expected 'event' record");
        }
        if (rec.next_u64("step") != trace.events.size()) {
            rec.fail("out-of-order step index");
        }
        std::string_view kind = rec.next("kind");
        TraceEvent e{rec.next_party("actor"), GateEvent{}};
        if (kind == "Gate") {
            auto gate = parse_gate(rec.next("gate"));
            if (!gate) {
                rec.fail("unknown gate");
            }
            GateEvent g{*gate, {}};
            for (auto name : split(rec.next("qubits"), ',')) {
                g.qubits.push_back(qubit_by_name(trace, name, rec));
            }
            e.payload = std::move(g);
        } else if (kind == "Transfer") {
            QubitId q = qubit_by_name(trace, rec.next("qubit"), rec);
            Party from = rec.next_party("from");
            e.payload = TransferEvent{q, from, rec.next_party("to")};
        } else if (kind == "Measure") {
            QubitId q = qubit_by_name(trace, rec.next("qubit"), rec);
            int bit = rec.next_bit(rec.next("bit"));
            e.payload = MeasureEvent{q, bit, rec.next_double("probability")};
        } else if (kind == "ClassicalMsg") {
            Party from = rec.next_party("from");
            Party to = rec.next_party("to");
            std::vector<int> bits;
            for (auto b : split(rec.next("bits"), ',')) {
                bits.push_back(rec.next_bit(b));
            }
            e.payload = MessageEvent{std::move(bits), from, to};
        } else if (kind == "Correction") {
            auto op = parse_correction(rec.next("op"));
            if (!op) {
                rec.fail("unknown correction operator");
            }
            e.payload = CorrectionEvent{*op, qubit_by_name(trace, rec.next("qubit"), rec)};
        } else {
            rec.fail("unknown event kind '" + std::string(kind) + "'");
        }
        rec.done();
        trace.events.push_back(std::move(e));
    }

    Record footer(lines.back(), lines.size());
    if (footer.tag() != "end") {
        footer.fail("expected 'end' footer");
    }
    trace.classical_bits_sent = static_cast<int>(footer.next_u64("bits"));
    trace.classical_rounds = static_cast<int>(footer.next_u64("rounds"));
    trace.final_fidelity = footer.next_double("fidelity");
    if (footer.next_u64("seed") != trace.seed) {
        footer.fail("footer seed does not match header");
    }
    trace.halted = footer.next_bit(footer.next("halted")) == 1;
    footer.done();
    return trace;
}

std::string render_trace_text(const ProtocolTrace &trace) {
    std::ostringstream out;
    const auto &names = trace.qubit_names;
    out << protocol_name(trace.protocol) << " seed=" << trace.seed << " unknown=(" << format_complex(trace.unknown.a)
        << ", " << format_complex(trace.unknown.b) << ")\n";
    for (std::size_t i = 0; i < trace.events.size(); i++) {
        const TraceEvent &e = trace.events[i];
        std::string actor(party_name(e.actor));
        actor.resize(7, ' ');
        out << "  [" << (i < 10 ? " " : "") << i << "] " << actor;
        std::visit(
            [&](const auto &p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GateEvent>) {
                    out << gate_name(p.gate) << " ";
                    for (std::size_t k = 0; k < p.qubits.size(); k++) {
                        out << (k ? "," : "") << names.at(p.qubits[k]);
                    }
                } else if constexpr (std::is_same_v<T, TransferEvent>) {
                    out << "transfer " << names.at(p.qubit) << " " << party_name(p.from) << " -> "
                        << party_name(p.to);
                } else if constexpr (std::is_same_v<T, MeasureEvent>) {
                    out << "measure " << names.at(p.qubit) << " -> " << p.bit
                        << " (p=" << format_double(p.probability) << ")";
                } else if constexpr (std::is_same_v<T, MessageEvent>) {
                    out << "send [" << join_bits(p.bits) << "] -> " << party_name(p.receiver);
                } else {
                    out << "correct " << names.at(p.qubit) << " with " << correction_name(p.op);
                }
            },
            e.payload);
        out << "\n";
    }
    out << "  bits=" << trace.classical_bits_sent << " rounds=" << trace.classical_rounds
        << " fidelity=" << format_double(trace.final_fidelity) << "\n";
    return out.str();
}

}  // namespace teleportsim
