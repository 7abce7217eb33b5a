#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace skewsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitRejectionBudget = 3,
  kExitEnvelope = 4,
  kExitAccuracy = 5,
};

/// Exit code for the exception currently being handled.
int exit_code_for(const std::exception_ptr& e);

/// Executes the configured command and writes its artifacts into cfg.out_dir.
/// Errors are reported on `err` and mapped to an ExitCode; partial outputs
/// are removed.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The invariant suite behind `skewsim validate`.
std::vector<CheckResult> validation_suite(std::uint64_t seed);

/// parse_args + run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewsim::cli
