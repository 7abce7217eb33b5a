#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "CLI11.hpp"

namespace skewsim::cli {

namespace {

enum class Kind { real, positive_real, beta, count, small_count, u64, text };

const char* kind_text(Kind k) {
  switch (k) {
    case Kind::real: return "real number";
    case Kind::positive_real: return "positive real number";
    case Kind::beta: return "real number in (-1, 1)";
    case Kind::count: return "positive integer";
    case Kind::small_count: return "integer >= 1 below 2^31";
    case Kind::u64: return "unsigned 64-bit integer";
    case Kind::text: return "text";
  }
  return "value";
}

struct KeySpec {
  const char* name;
  Kind kind;
  const char* fallback;  ///< nullptr: required when used
  const char* help;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table{
      {"model", Kind::text, nullptr, "example1, example2 or custom:<file>"},
      {"T", Kind::positive_real, "1", "horizon"},
      {"x0", Kind::real, "0", "starting point (original coordinate)"},
      {"n", Kind::count, nullptr, "number of samples"},
      {"seed", Kind::u64, "1", "RNG seed"},
      {"workers", Kind::small_count, "1", "worker threads (does not change results)"},
      {"dt", Kind::positive_real, nullptr, "Euler time step"},
      {"out_dir", Kind::text, ".", "output directory"},
      {"bins", Kind::small_count, "200", "histogram bins"},
      {"hist_lo", Kind::real, "", "histogram lower edge (default q0.001)"},
      {"hist_hi", Kind::real, "", "histogram upper edge (default q0.999)"},
      {"kind", Kind::text, "", "what to tabulate"},
      {"beta", Kind::beta, nullptr, "skewness"},
      {"mu", Kind::real, "0", "drift"},
      {"t", Kind::positive_real, nullptr, "time"},
      {"x", Kind::real, "0", "starting point"},
      {"a", Kind::real, nullptr, "bridge start"},
      {"b", Kind::real, nullptr, "bridge end"},
      {"z", Kind::real, "0", "hitting level"},
      {"lambda", Kind::positive_real, "1", "Laplace variable"},
      {"y_lo", Kind::real, "-5", "grid lower end"},
      {"y_hi", Kind::real, "5", "grid upper end"},
      {"points", Kind::small_count, "201", "grid points"},
      {"endpoint_budget", Kind::count, "1000000", "endpoint proposals per sample"},
      {"outer_budget", Kind::count, "10000000", "outer proposals per sample"},
      {"bridge_budget", Kind::count, "1000000", "bridge proposals per point"},
  };
  return table;
}

const KeySpec& spec_of(const std::string& key) {
  for (const auto& s : key_table()) {
    if (key == s.name) return s;
  }
  throw UsageError("unknown key '" + key + "'");
}

std::vector<std::string> kinds_for(Command c) {
  switch (c) {
    case Command::density: return {"density", "cdf", "bridge"};
    case Command::analytics: return {"u_lambda", "ell", "max_density", "scale"};
    default: return {};
  }
}

std::vector<std::string> used_keys(Command c, const std::string& kind) {
  const std::vector<std::string> grid{"y_lo", "y_hi", "points"};
  std::vector<std::string> keys;
  switch (c) {
    case Command::density:
      if (kind == "bridge") {
        keys = {"t", "T", "a", "b", "beta", "mu"};
      } else {
        keys = {"t", "x", "beta", "mu"};
      }
      keys.insert(keys.end(), grid.begin(), grid.end());
      break;
    case Command::bridge:
      keys = {"t", "T", "a", "b", "beta", "mu", "n", "seed", "workers", "bridge_budget"};
      break;
    case Command::exact:
      keys = {"model", "T", "x0", "n", "seed", "workers", "bins", "hist_lo", "hist_hi",
              "endpoint_budget", "outer_budget", "bridge_budget"};
      break;
    case Command::euler:
      keys = {"model", "T", "x0", "n", "seed", "workers", "dt", "bins", "hist_lo", "hist_hi"};
      break;
    case Command::analytics:
      if (kind == "u_lambda") {
        keys = {"z", "lambda", "beta"};
      } else if (kind == "ell") {
        keys = {"t", "x", "beta"};
      } else if (kind == "max_density") {
        keys = {"a", "b", "T", "lambda", "beta"};
      } else {
        keys = {"beta"};
      }
      keys.insert(keys.end(), grid.begin(), grid.end());
      break;
    case Command::validate:
      keys = {"seed"};
      break;
  }
  if (!kinds_for(c).empty()) keys.push_back("kind");
  keys.push_back("out_dir");
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const KeySpec& spec, const std::string& value) {
  throw UsageError("key '" + std::string(spec.name) + "' expects a " + kind_text(spec.kind) +
                   ", got '" + value + "'");
}

double to_real(const KeySpec& spec, const std::string& value) {
  double v = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad_value(spec, value);
  if (spec.kind == Kind::positive_real && !(v > 0.0)) bad_value(spec, value);
  if (spec.kind == Kind::beta && !(std::fabs(v) < 1.0)) bad_value(spec, value);
  return v;
}

std::uint64_t to_unsigned(const KeySpec& spec, const std::string& value) {
  std::uint64_t v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_value(spec, value);
  if (spec.kind == Kind::count &&
      (v == 0 || v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))) {
    bad_value(spec, value);
  }
  if (spec.kind == Kind::small_count && (v == 0 || v >= (1ULL << 31))) bad_value(spec, value);
  return v;
}

void assign(RunConfig& cfg, const KeySpec& spec, const std::string& value) {
  const std::string key = spec.name;
  if (spec.kind == Kind::text) {
    if (value.empty()) bad_value(spec, value);
    if (key == "model") cfg.model = value;
    if (key == "out_dir") cfg.out_dir = value;
    if (key == "kind") cfg.kind = value;
    return;
  }
  if (spec.kind == Kind::count || spec.kind == Kind::small_count || spec.kind == Kind::u64) {
    const std::uint64_t v = to_unsigned(spec, value);
    const auto i = static_cast<std::int64_t>(v);
    if (key == "n") cfg.n = i;
    else if (key == "seed") cfg.seed = v;
    else if (key == "workers") cfg.workers = static_cast<unsigned>(v);
    else if (key == "bins") cfg.bins = static_cast<int>(v);
    else if (key == "points") cfg.points = static_cast<int>(v);
    else if (key == "endpoint_budget") cfg.endpoint_budget = i;
    else if (key == "outer_budget") cfg.outer_budget = i;
    else if (key == "bridge_budget") cfg.bridge_budget = i;
    return;
  }
  const double v = to_real(spec, value);
  static const std::map<std::string, double RunConfig::*> reals{
      {"T", &RunConfig::T},       {"x0", &RunConfig::x0},     {"dt", &RunConfig::dt},
      {"beta", &RunConfig::beta}, {"mu", &RunConfig::mu},     {"t", &RunConfig::t},
      {"x", &RunConfig::x},       {"a", &RunConfig::a},       {"b", &RunConfig::b},
      {"z", &RunConfig::z},       {"lambda", &RunConfig::lambda},
      {"y_lo", &RunConfig::y_lo}, {"y_hi", &RunConfig::y_hi}};
  if (key == "hist_lo") {
    cfg.hist_lo = v;
  } else if (key == "hist_hi") {
    cfg.hist_hi = v;
  } else {
    cfg.*(reals.at(key)) = v;
  }
}

void cross_check(const RunConfig& cfg) {
  const bool has_grid = cfg.command == Command::density || cfg.command == Command::analytics;
  if (has_grid) {
    if (!(cfg.y_lo < cfg.y_hi)) throw UsageError("y_lo must be below y_hi");
    if (cfg.points < 2) throw UsageError("key 'points' expects an integer >= 2");
  }
  const bool bridge_like = cfg.command == Command::bridge ||
                           (cfg.command == Command::density && cfg.kind == "bridge");
  if (bridge_like && !(cfg.t < cfg.T)) throw UsageError("bridge time t must lie in (0, T)");
  if (cfg.hist_lo.has_value() != cfg.hist_hi.has_value()) {
    throw UsageError("hist_lo and hist_hi must be given together");
  }
  if (cfg.hist_lo && !(*cfg.hist_lo < *cfg.hist_hi)) {
    throw UsageError("hist_lo must be below hist_hi");
  }
  if (!cfg.model.empty() && cfg.model != "example1" && cfg.model != "example2" &&
      (cfg.model.rfind("custom:", 0) != 0 || cfg.model.size() == 7)) {
    throw UsageError("key 'model' expects example1, example2 or custom:<file>, got '" +
                     cfg.model + "'");
  }
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::density: return "density";
    case Command::bridge: return "bridge";
    case Command::exact: return "exact";
    case Command::euler: return "euler";
    case Command::analytics: return "analytics";
    case Command::validate: return "validate";
  }
  return "?";
}

std::vector<std::string> keys_for(Command command) {
  std::set<std::string> all;
  const auto kinds = kinds_for(command);
  if (kinds.empty()) {
    for (auto& k : used_keys(command, "")) all.insert(k);
  }
  for (const auto& kind : kinds) {
    for (auto& k : used_keys(command, kind)) all.insert(k);
  }
  std::vector<std::string> ordered;
  for (const auto& s : key_table()) {
    if (all.count(s.name)) ordered.emplace_back(s.name);
  }
  return ordered;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(number);
    if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(where + ": empty key");
    if (!out.emplace(key, value).second) throw UsageError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

RunConfig build_config(Command command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values, std::ostream* log) {
  std::map<std::string, std::string> merged = file_values;
  for (const auto& [key, value] : flag_values) {
    auto it = merged.find(key);
    if (it != merged.end() && it->second != value && log) {
      *log << "skewsim: --" << key << "=" << value << " overrides config file value "
           << it->second << "\n";
    }
    merged[key] = value;
  }

  const auto accepted = keys_for(command);
  for (const auto& [key, value] : merged) {
    if (std::find(accepted.begin(), accepted.end(), key) == accepted.end()) {
      throw UsageError("unknown key '" + key + "' for command '" + command_name(command) + "'");
    }
  }

  RunConfig cfg;
  cfg.command = command;
  const auto kinds = kinds_for(command);
  if (!kinds.empty()) {
    auto it = merged.find("kind");
    cfg.kind = it == merged.end() ? kinds.front() : it->second;
    if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end()) {
      std::string list;
      for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
      throw UsageError("key 'kind' expects one of " + list + ", got '" + cfg.kind + "'");
    }
    merged["kind"] = cfg.kind;
  }

  const auto used = used_keys(command, cfg.kind);
  for (const auto& [key, value] : merged) {
    if (std::find(used.begin(), used.end(), key) == used.end()) {
      throw UsageError("key '" + key + "' is not used by '" + command_name(command) +
                       "' with kind '" + cfg.kind + "'");
    }
  }

  for (const auto& key : used) {
    const KeySpec& spec = spec_of(key);
    std::string value;
    if (auto it = merged.find(key); it != merged.end()) {
      value = it->second;
    } else if (spec.fallback == nullptr) {
      throw UsageError(std::string("missing required key '") + key + "' (" +
                       kind_text(spec.kind) + ") for command '" + command_name(command) + "'");
    } else {
      value = spec.fallback;
      if (value.empty()) continue;
    }
    assign(cfg, spec, value);
    if (key != "workers" && key != "out_dir") cfg.echo[key] = value;
  }
  cross_check(cfg);
  return cfg;
}

ParsedArgs parse_args(const std::vector<std::string>& args, std::ostream& out,
                      std::ostream& err) {
  CLI::App app{"Exact simulation of SDEs with a local-time term at zero", "skewsim"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", SKEWSIM_VERSION);

  const std::vector<std::pair<Command, const char*>> commands{
      {Command::density, "tabulate the transition, bridge density or cdf on a grid"},
      {Command::bridge, "sample skew bridge points"},
      {Command::exact, "exact endpoint samples"},
      {Command::euler, "Euler-Maruyama endpoint samples"},
      {Command::analytics, "tabulate hitting-time and maximum-decomposition quantities"},
      {Command::validate, "run the invariant suite"}};

  std::map<Command, std::map<std::string, std::string>> storage;
  std::map<Command, std::string> config_paths;
  std::map<Command, CLI::App*> subs;
  for (const auto& [command, description] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(command), description);
    subs[command] = sub;
    sub->add_option("--config", config_paths[command], "key = value file; flags override it");
    for (const auto& key : keys_for(command)) {
      const KeySpec& spec = spec_of(key);
      std::string help = spec.help;
      help += std::string(" (") + kind_text(spec.kind) + ")";
      sub->add_option("--" + key, storage[command][key], help);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? 0 : 2};
  }

  for (const auto& [command, sub] : subs) {
    if (!sub->parsed()) continue;
    std::map<std::string, std::string> flags;
    for (const auto& key : keys_for(command)) {
      if (sub->count("--" + key) > 0) flags[key] = trim(storage[command][key]);
    }
    std::map<std::string, std::string> file;
    std::optional<std::string> path;
    if (sub->count("--config") > 0) {
      path = config_paths[command];
      file = read_config_file(*path);
    }
    RunConfig cfg = build_config(command, file, flags, &err);
    cfg.config_file = path;
    return {std::move(cfg), 0};
  }
  return {std::nullopt, 2};
}

}  // namespace skewsim::cli
