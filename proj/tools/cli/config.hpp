#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewsim::cli {

/// Bad command line or config file. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Command { density, bridge, exact, euler, analytics, validate };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::validate;

  std::string model;
  double T = 1.0;
  double x0 = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double dt = 0.0;
  std::string out_dir = ".";

  int bins = 200;
  std::optional<double> hist_lo;
  std::optional<double> hist_hi;

  std::string kind;  ///< density: density|bridge|cdf; analytics: u_lambda|ell|max_density|scale
  double beta = 0.0;
  double mu = 0.0;
  double t = 0.0;
  double x = 0.0;
  double a = 0.0;
  double b = 0.0;
  double z = 0.0;
  double lambda = 1.0;
  double y_lo = -5.0;
  double y_hi = 5.0;
  int points = 201;

  std::int64_t endpoint_budget = 1'000'000;
  std::int64_t outer_budget = 10'000'000;
  std::int64_t bridge_budget = 1'000'000;

  /// Resolved values of every key that shaped the output, as text.
  /// workers, out_dir and config are excluded: they do not change results.
  std::map<std::string, std::string> echo;
  std::optional<std::string> config_file;
};

/// Flat `key = value` lines, `#` starts a comment. Duplicate keys are errors.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Merges file values and flag values (flags win; each override is written
/// to `log`), applies defaults, and validates every key for `command`.
RunConfig build_config(Command command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values,
                       std::ostream* log = nullptr);

/// Keys accepted by `command` (excluding `config`).
std::vector<std::string> keys_for(Command command);

struct ParsedArgs {
  std::optional<RunConfig> config;  ///< empty when help was printed
  int exit_code = 0;
};

/// Full command-line front end: `skewsim <command> [--key value ...] [--config file]`.
ParsedArgs parse_args(const std::vector<std::string>& args, std::ostream& out,
                      std::ostream& err);

}  // namespace skewsim::cli
