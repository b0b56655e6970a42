#pragma once

#include <cstdint>
#include <iosfwd>

#include "perimax/json_io.hpp"

namespace perimax::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 2,
  kInvalidInput = 3,
  kCertificationFailed = 4,
  kPropertyViolation = 5,
};

/// Runs one subcommand. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct PaperCheckSummary {
  Json report;
  bool passed = true;
};

/// Randomized sweeps of the numeric verifiers plus monotone-triple totality.
PaperCheckSummary check_paper(long samples, std::uint64_t seed);

}  // namespace perimax::cli
