#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhs/io/json_io.hpp"

namespace mhs::cli {

enum ExitCode { ok = 0, verification_failed = 1, input_error = 2 };

struct RunConfig {
  std::string subcommand;
  std::string input;  // empty: generated instances (sweep subcommands)
  std::string backend = "exact";
  std::optional<double> tol_rank;
  std::optional<double> tol_torus;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1;
  std::string out;  // empty or "-": standard output
  int twist = 0;
  std::vector<long> integral_class;
  std::string kind = "pairing";  // generate: pairing | sequence | mhs | curve
  std::size_t divisors = 10;     // curve-verify sweep: divisors per torus
};

struct RunResult {
  int exit_code = ExitCode::ok;
  io::Json report;
  std::string summary;
};

/// Executes one subcommand. Never throws: input problems give exit 2 with the
/// message in the report, failed checks give exit 1.
RunResult run(const RunConfig& config);

io::Json config_to_json(const RunConfig& config);

/// Parses arguments (flags override MHS_* environment variables), runs, writes
/// the report and the summary line, and returns the exit status.
int main_entry(int argc, char** argv);

}  // namespace mhs::cli
