#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace chroma::cli {

/// Canonical report serialisation: sorted object keys, floats printed with
/// 17 significant digits (lossless round-trip), non-finite floats as the
/// strings "inf"/"-inf"/"nan". parse-then-dump is the identity on bytes.
std::string canonical_dump(const nlohmann::json& j);

/// Exit codes: 0 success, 1 verdict failure, 2 usage/config error,
/// 3 budget exceeded.
enum ExitCode : int {
    kOk = 0,
    kVerdictFailure = 1,
    kUsageError = 2,
    kBudgetExceeded = 3,
};

struct RunResult {
    int exit_code = kOk;
    /// Full report (includes duration_ms), printed to stdout.
    std::string report;
    /// Deterministic artifact written to --out: JSONL for sample, CSV for
    /// classify, the duration-free report for everything else.
    std::string out_text;
    std::string out_path;  // resolved --out destination, empty if unset
    std::string error;     // diagnostic for non-zero exits
};

/// Runs one subcommand. `args` excludes argv[0]. A `--config FILE` anywhere
/// in the args supplies defaults: its "params" object maps to long flags,
/// and flags given on the command line win.
RunResult run_command(std::vector<std::string> args);

int main_entry(int argc, char** argv);

}  // namespace chroma::cli
