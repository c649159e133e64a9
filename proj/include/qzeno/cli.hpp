// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeno::cli {

enum class Command { Classical, ZenoGaussian, ResponseFirst, ResponseSecond, ZenoCurve, Verify };

/// Fully resolved invocation.  params holds only keys meaningful for the
/// command; N may be +infinity for the analytic limit.
struct RunConfig {
    Command command;
    std::map<std::string, double> params;
    std::string format = "csv"; // "csv" or "json"
    std::string output;         // empty: standard output
    bool landau_peierls = false;
    bool allow_flags = false;
};

/// Malformed invocation (unknown flag, missing parameter, bad number).
class usage_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised by --help; carries the text to print.
class help_requested : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string usage_text();

/// Parses a subcommand plus flags; --config FILE supplies key = value
/// defaults that command-line flags override.  Deterministic; does not
/// execute anything.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the command, writing the artifact to config.output (or `out`
/// when no path is set) and diagnostics to `diag`.  Returns the process exit
/// status: 0 success, 1 operational failure, 2 verification flags present
/// and not allowed.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Full program entry: parse + run; usage errors exit 64, --help exits 0.
int main_entry(int argc, char** argv);

} // namespace qzeno::cli
