#pragma once

#include "ruinlab/cli/config.hpp"

#include <iosfwd>

namespace ruinlab::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_numerical = 3,
};

/// theta*, clamped theta*, K and R at the reference surplus, f(0).
void cmd_merton(const RunConfig& config, std::ostream& out);

/// One CSV row (plus header) for the [ruin] strategy at model.x0.
void cmd_ruin(const RunConfig& config, std::ostream& out);

/// Ruin table with and without Merton investment, rows ordered by (law, x).
void cmd_table(const RunConfig& config, std::ostream& out);

/// Accumulated-utility estimates per (x0, strategy), optionally next to the closed form.
void cmd_value(const RunConfig& config, std::ostream& out);

/// Dynamic programming principle gap with PASS/FAIL.
void cmd_dpp(const RunConfig& config, std::ostream& out);

/**
 * Full command-line entry point:
 *
 *   ruinlab <merton|ruin|table|value|dpp> --config <path> [--out <path>]
 *           [--seed <u64>] [--workers <n>] [--echo-config]
 *
 * Returns the process exit code; diagnostics go to err.
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ruinlab::cli
