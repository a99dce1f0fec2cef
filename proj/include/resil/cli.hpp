#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "resil/indicators.hpp"
#include "resil/matching.hpp"
#include "resil/scenario.hpp"

namespace resil::cli {

enum ExitCode : int { Ok = 0, Usage = 2, ScenarioFailure = 3, RuntimeFailure = 4 };

/// Fixed 6-digit rendering used for every real in results.csv.
std::string format_real(double v);

std::string csv_header();
std::string csv_row(const std::string& scenario, std::uint64_t seed, const IndicatorReport& r);

struct RunOutput {
    std::string scenario;
    std::uint64_t seed = 0;
    Tick horizon = 0;
    Trace trace;
    IndicatorReport report;
};

RunOutput run_once(const Scenario& scenario, std::uint64_t seed);

/// Human-readable indicator summary.
std::string report_text(const RunOutput& run);

/// Writes results.csv, trace.log and report.txt into `out`. Throws IoError.
void cmd_simulate(const std::filesystem::path& scenario, std::uint64_t seed,
                  const std::filesystem::path& out);

/// Runs every (scenario, seed) pair, concurrently, and writes results.csv
/// and comparison.txt. Rows follow (scenario order, seed order).
void cmd_compare(const std::vector<std::filesystem::path>& scenarios,
                 const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out);

/// "size:min-max,..." per role. Throws InvalidArgument on malformed text.
std::vector<PoolBounds> parse_role_spec(const std::string& spec);

/// Pools with synthetic members "r<role>m<index>".
std::vector<RolePool> synthetic_pools(const std::vector<PoolBounds>& bounds);

/// Prints the count and, when `list` is set, every team state in
/// lexicographic order. Returns the count.
std::uint64_t cmd_enumerate_teams(const std::string& spec, bool list, std::ostream& os);

/// Entry point of the resil-sim executable; returns the process exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace resil::cli
