// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "twocopy/experiment.hpp"
#include "twocopy/qstate.hpp"

namespace twocopy::cli {

/// args excludes the program name. Returns the process exit code; on failure
/// writes a single `error: ...` line to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "start:stop:n" with start/stop as a number, `pi`, or a number followed by
/// `pi` (e.g. `0.5pi`). Throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& spec);

/// `singlet`, `werner:P` or `file:PATH`. A file holds one matrix row per
/// line as whitespace- or comma-separated re/im pairs; the row count must be
/// a perfect square d², read as d x d qubits-or-qudits.
DensityOperator parse_state(const std::string& spec);

/// Flat JSON object with RunConfig field names. Unknown keys are rejected.
experiment::RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const experiment::RunConfig& c);

nlohmann::json report_to_json(const experiment::RunReport& r);
std::string counts_csv(const experiment::CountRecord& counts);

/// `%.16e`, the CSV number format.
std::string format_number(double x);

}  // namespace twocopy::cli
