#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seqlearn {

// Configuration of one tool invocation (parsed from flags and/or a config
// file by the command-line front end).
struct RunConfig {
  std::vector<double> p_values;  // points to evaluate (sorted ascending)
  double delta = 0.9;
  std::string mechanism = "both";  // bhw | nsii | both
  std::string mode = "analytic";   // analytic | simulate | dp | crosscheck
  long episodes = 100000;
  std::uint64_t seed = 1;
  int horizon = 0;  // simulate: episode length (0 = auto); dp: stages (1..7)
  int kmax = 200;
  bool normalize = false;
  std::string out;            // CSV destination ("" = stdout)
  std::string series_prefix;  // if set, write two-column plot series files
};

// Expands "start:stop:step" into a grid (inclusive stop within 1e-9).
std::vector<double> parse_grid(const std::string& spec);

// Parses argv-style arguments (without the program name) into `config`;
// --config FILE loads key = value defaults that explicit flags override.
// Returns 0 on success, 1 on a usage error (description in `err`).
int parse_command_line(const std::vector<std::string>& args, RunConfig& config,
                       std::string& err);

// Runs the configured job and writes the CSV.  Returns 0 on success, 1 on a
// configuration error, 2 on a runtime/numerical error (including a failed
// crosscheck).
int run(const RunConfig& config);

// The fixed CSV header line.
extern const char* const csv_header;

}  // namespace seqlearn
