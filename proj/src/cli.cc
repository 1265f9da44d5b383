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

#include "teleportsim/cli.h"

#include <charconv>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "teleportsim/analysis.h"
#include "teleportsim/rng.h"
#include "teleportsim/text.h"
#include "teleportsim/trace_io.h"

namespace teleportsim::cli {

namespace {

constexpr double kPerfect = 1 - 1e-10;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string outcome_label(const BranchNode &leaf, const std::vector<std::string> &names) {
    std::string out;
    for (const auto &[q, bit] : leaf.outcome_bits) {
        out += (out.empty() ? "" : ",") + names.at(q) + ":" + std::to_string(bit);
    }
    return out;
}

std::optional<std::uint64_t> parse_seed(std::string_view text) {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return v;
}

ProtocolId protocol_or_throw(const std::string &name) {
    auto id = parse_protocol(name);
    if (!id) {
        throw UsageError("unknown protocol '" + name +
                         "' (expected standard, protocol1, protocol1_reversed, protocol2 or protocol2_variant)");
    }
    return *id;
}

/// nullopt means "random".
std::optional<QubitAmplitudes> unknown_from_flags(const std::string &a, const std::string &b) {
    bool a_random = a.empty() || a == "random";
    bool b_random = b.empty() || b == "random";
    if (a_random && b_random) {
        return std::nullopt;
    }
    if (a_random != b_random) {
        throw NormalizationError("--a and --b must both be given (or both omitted for a random state)");
    }
    auto pa = parse_complex(a);
    auto pb = parse_complex(b);
    if (!pa || !pb) {
        throw UsageError("amplitudes must be complex literals like 0.6, 0.8i or 0.6-0.8i");
    }
    QubitAmplitudes u{*pa, *pb};
    u.validate();
    return u;
}

}  // namespace

int cmd_run(const RunConfig &config, std::ostream &out) {
    if (config.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    if (config.unknown) {
        config.unknown->validate();
    }
    double fidelity_sum = 0;
    double fidelity_min = 1;
    long long total_bits = 0;
    long long total_rounds = 0;
    bool audits = true;
    for (std::size_t i = 0; i < config.trials; i++) {
        std::uint64_t seed = config.seed + i;
        QubitAmplitudes u = config.unknown ? *config.unknown : random_qubit(seed);
        ProtocolTrace trace = run(config.protocol, u, seed);
        LocalityAudit audit = audit_locality(trace);
        audits &= audit.passed;
        fidelity_sum += trace.final_fidelity;
        fidelity_min = std::min(fidelity_min, trace.final_fidelity);
        total_bits += trace.classical_bits_sent;
        total_rounds += trace.classical_rounds;
        if (!config.summary_only) {
            if (config.format == OutputFormat::kStructured) {
                out << serialize_trace(trace);
            } else {
                out << render_trace_text(trace) << "  audit=" << (audit.passed ? "pass" : audit.message) << "\n";
            }
        }
    }
    auto n = static_cast<double>(config.trials);
    bool ok = audits && fidelity_min >= kPerfect;
    out << "summary protocol=" << protocol_name(config.protocol) << " trials=" << config.trials
        << " mean_fidelity=" << format_double(fidelity_sum / n) << " min_fidelity=" << format_double(fidelity_min)
        << " total_bits=" << total_bits << " mean_bits=" << format_double(static_cast<double>(total_bits) / n)
        << " total_rounds=" << total_rounds << " audits=" << (audits ? "pass" : "fail")
        << " status=" << (ok ? "ok" : "fail") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_enumerate(ProtocolId protocol, const QubitAmplitudes &unknown, OutputFormat format, std::ostream &out) {
    unknown.validate();
    BranchTree tree = enumerate_branches(protocol, unknown);
    double expected_bits = 0;
    double expected_rounds = 0;
    double total = 0;
    bool ok = true;
    out << "enumerate protocol=" << protocol_name(protocol) << " a=" << format_complex(unknown.a)
        << " b=" << format_complex(unknown.b) << " leaves=" << tree.leaves.size() << "\n";
    if (format == OutputFormat::kText) {
        out << std::left << std::setw(16) << "outcomes" << std::setw(14) << "probability" << std::setw(6) << "bits"
            << "fidelity\n";
    }
    for (const auto &leaf : tree.leaves) {
        expected_bits += leaf.probability * leaf.bits_sent;
        expected_rounds += leaf.probability * leaf.rounds;
        total += leaf.probability;
        ok &= leaf.fidelity >= kPerfect;
        std::string label = outcome_label(leaf, leaf.trace.qubit_names);
        if (format == OutputFormat::kStructured) {
            out << "leaf outcomes=" << label << " probability=" << format_double(leaf.probability)
                << " bits=" << leaf.bits_sent << " rounds=" << leaf.rounds
                << " fidelity=" << format_double(leaf.fidelity) << "\n";
        } else {
            out << std::left << std::setw(16) << label << std::setw(14) << std::setprecision(12) << leaf.probability
                << std::setw(6) << leaf.bits_sent << leaf.fidelity << "\n";
        }
    }
    out << "expected_bits=" << format_double(expected_bits) << " expected_rounds=" << format_double(expected_rounds)
        << " total_probability=" << format_double(total) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const RunOptions &options, std::ostream &out) {
    CheckReport report = run_verification(options);
    out << report.render();
    if (const CheckResult *first = report.first_failure()) {
        out << "verify: " << report.failures() << " of " << report.checks.size()
            << " checks failed; first failure: " << first->name << "\n";
        return kExitCheckFailed;
    }
    out << "verify: all " << report.checks.size() << " checks passed\n";
    return kExitOk;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err, const char *env_seed) {
    CLI::App app{"Teleportation protocol simulator with exact branch enumeration and bit accounting", "teleportsim"};
    app.require_subcommand(1);

    std::string protocol = "protocol1";
    std::string a;
    std::string b;
    std::string seed_text;
    std::size_t trials = 1;
    std::string format = "text";
    bool summary_only = false;
    std::string inject = "none";

    const std::vector<std::string> formats{"text", "structured"};
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--protocol", protocol,
                        "standard | protocol1 | protocol1_reversed | protocol2 | protocol2_variant");
        sub->add_option("--a", a, "amplitude of |0>: \"re\", \"imi\" or \"re+imi\"");
        sub->add_option("--b", b, "amplitude of |1>");
        sub->add_option("--format", format, "text | structured")->check(CLI::IsMember(formats));
    };

    CLI::App *run_cmd = app.add_subcommand("run", "run a protocol and emit its trace(s)");
    add_common(run_cmd);
    run_cmd->add_option("--seed", seed_text, "unsigned seed (default 0, or TELEPORTSIM_SEED)");
    run_cmd->add_option("--trials", trials, "number of runs; trial i uses seed + i")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--summary-only", summary_only, "print only the summary line");

    CLI::App *enum_cmd = app.add_subcommand("enumerate", "list every measurement branch with exact probabilities");
    add_common(enum_cmd);

    CLI::App *verify_cmd = app.add_subcommand("verify", "run every analysis check");
    verify_cmd->add_option("--inject", inject, "fault to inject: none | flip-cnot | wrong-p2-corrections")
        ->check(CLI::IsMember({"none", "flip-cnot", "wrong-p2-corrections"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        OutputFormat fmt = format == "structured" ? OutputFormat::kStructured : OutputFormat::kText;
        if (run_cmd->parsed()) {
            RunConfig config;
            config.protocol = protocol_or_throw(protocol);
            config.unknown = unknown_from_flags(a, b);
            std::string_view seed_source = !seed_text.empty() ? std::string_view(seed_text)
                                           : env_seed != nullptr ? std::string_view(env_seed)
                                                                 : std::string_view("0");
            auto seed = parse_seed(seed_source);
            if (!seed) {
                throw UsageError("seed must be an unsigned integer, got '" + std::string(seed_source) + "'");
            }
            config.seed = *seed;
            config.trials = trials;
            config.format = fmt;
            config.summary_only = summary_only;
            return cmd_run(config, out);
        }
        if (enum_cmd->parsed()) {
            ProtocolId id = protocol_or_throw(protocol);
            auto u = unknown_from_flags(a, b);
            if (!u) {
                throw NormalizationError("enumerate needs explicit --a and --b");
            }
            return cmd_enumerate(id, *u, fmt, out);
        }
        RunOptions options;
        if (inject == "flip-cnot") {
            options.flip_cnot = true;
        } else if (inject == "wrong-p2-corrections") {
            CorrectionTable wrong = protocol2_step4_corrections();
            auto swap_01 = wrong.at(std::vector{0, 1});
            wrong.set({0, 1}, wrong.at(std::vector{1, 1}));
            wrong.set({1, 1}, swap_01);
            options.protocol2_step4_override = wrong;
        }
        return cmd_verify(options, out);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NormalizationError &e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace teleportsim::cli
