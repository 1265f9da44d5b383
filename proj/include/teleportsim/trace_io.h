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

#ifndef TELEPORTSIM_TRACE_IO_H
#define TELEPORTSIM_TRACE_IO_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "teleportsim/protocol.h"

namespace teleportsim {

/// Line-delimited trace format. One header line, one line per event, one
/// footer line; every line is a record tag followed by space-separated
/// key=value fields in a fixed order:
///
///     trace protocol=protocol1 seed=7 a=0.6+0i b=0.8+0i qubits=X,Y,Z owners=Alice,Broker,Broker destination=Z
///     event step=0 kind=Transfer actor=Broker qubit=Y from=Broker to=Alice
///     event step=2 kind=Gate actor=Alice gate=CNOT qubits=X,Y
///     event step=6 kind=Measure actor=Alice qubit=X bit=1 probability=0.5
///     event step=8 kind=ClassicalMsg actor=Alice from=Alice to=Bob bits=1
///     event step=9 kind=Correction actor=Bob op=Z qubit=Z
///     end bits=1 rounds=1 fidelity=1 seed=7 halted=0
///
/// Doubles are written in shortest round-trip form, so parsing a serialized
/// trace restores every field exactly.
std::string serialize_trace(const ProtocolTrace &trace);

struct TraceFormatError : std::runtime_error {
    TraceFormatError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Inverse of serialize_trace. Snapshots are left empty; use replay() to
/// rebuild them.
ProtocolTrace parse_trace(std::string_view text);

/// Human-readable rendering of one trace.
std::string render_trace_text(const ProtocolTrace &trace);

}  // namespace teleportsim

#endif
