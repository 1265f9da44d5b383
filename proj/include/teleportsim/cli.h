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

#ifndef TELEPORTSIM_CLI_H
#define TELEPORTSIM_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>

#include "teleportsim/protocol.h"

namespace teleportsim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitValidation = 3,
};

enum class OutputFormat { kText, kStructured };

struct RunConfig {
    ProtocolId protocol = ProtocolId::kProtocol1;
    /// nullopt draws a random unknown state per trial from the trial seed.
    std::optional<QubitAmplitudes> unknown;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    OutputFormat format = OutputFormat::kText;
    bool summary_only = false;
};

/// Trial i runs with seed + i.
int cmd_run(const RunConfig &config, std::ostream &out);
int cmd_enumerate(ProtocolId protocol, const QubitAmplitudes &unknown, OutputFormat format, std::ostream &out);
int cmd_verify(const RunOptions &options, std::ostream &out);

/// Full command line dispatch. env_seed is the value of TELEPORTSIM_SEED,
/// or nullptr when unset.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err, const char *env_seed);

}  // namespace teleportsim::cli

#endif
