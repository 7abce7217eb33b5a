#include "run.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>

#include "json.hpp"
#include "output.hpp"
#include "skewsim/analytics.hpp"
#include "skewsim/baseline.hpp"
#include "skewsim/bridge.hpp"
#include "skewsim/errors.hpp"
#include "skewsim/exactsim.hpp"
#include "skewsim/models.hpp"
#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"
#include "skewsim/stats.hpp"

namespace skewsim::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct LoadedModel {
  DriftModel model;
  EulerSde euler;  ///< on the original coordinate
};

LoadedModel load_model(const std::string& name) {
  if (name == "example1") {
    DriftModel m = example1_model();
    EulerSde sde = euler_sde(m);
    return {std::move(m), std::move(sde)};
  }
  if (name == "example2") {
    Example2 ex = example2_model();
    return {ex.model, euler_sde(ex.coeff, ex.beta_x)};
  }
  DriftModel m = custom_model_from_file(name.substr(7));
  EulerSde sde = euler_sde(m);
  return {std::move(m), std::move(sde)};
}

json base_report(const RunConfig& cfg) {
  json r;
  r["schema"] = "skewsim.report/1";
  r["command"] = command_name(cfg.command);
  r["version"] = SKEWSIM_VERSION;
  r["seed"] = cfg.seed;
  r["config"] = cfg.echo;
  return r;
}

json runtime_block(const RunConfig& cfg, double seconds) {
  json rt;
  rt["seconds"] = seconds;
  rt["workers"] = cfg.workers;
  rt["out_dir"] = cfg.out_dir;
  rt["config_file"] = cfg.config_file ? json(*cfg.config_file) : json(nullptr);
  return rt;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Histogram make_histogram(const RunConfig& cfg, const std::vector<double>& xs) {
  if (cfg.hist_lo) return histogram(xs, cfg.bins, *cfg.hist_lo, *cfg.hist_hi);
  return histogram_auto(xs, cfg.bins);
}

json summary(const std::vector<double>& xs) {
  const MeanCi ci = mean_ci(xs);
  return json{{"n", xs.size()}, {"mean", ci.mean}, {"mean_ci95_half_width", ci.half_width}};
}

std::vector<double> grid(const RunConfig& cfg) {
  std::vector<double> ys(static_cast<std::size_t>(cfg.points));
  const double step = (cfg.y_hi - cfg.y_lo) / (cfg.points - 1);
  for (int i = 0; i < cfg.points; ++i) ys[static_cast<std::size_t>(i)] = cfg.y_lo + step * i;
  ys.back() = cfg.y_hi;
  return ys;
}

std::string grid_csv(const std::vector<double>& ys, const std::vector<double>& values) {
  CsvText csv({"y", "value"});
  for (std::size_t i = 0; i < ys.size(); ++i) {
    csv.cell(ys[i]).cell(values[i]);
    csv.end_row();
  }
  return csv.str();
}

void run_density(const RunConfig& cfg, OutputSet& files, json& report) {
  const SkewParams p(cfg.beta, cfg.mu);
  const auto ys = grid(cfg);
  std::vector<double> values(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    if (cfg.kind == "density") values[i] = skew_density(cfg.t, cfg.x, y, p);
    else if (cfg.kind == "cdf") values[i] = skew_cdf(cfg.t, cfg.x, y, p);
    else values[i] = bridge_density(cfg.t, cfg.T, cfg.a, cfg.b, y, p);
  }
  files.add("grid.csv", grid_csv(ys, values));
  report["results"] = {{"grid_points", ys.size()}};
}

void run_analytics(const RunConfig& cfg, OutputSet& files, json& report) {
  const auto ys = grid(cfg);
  std::vector<double> values(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    if (cfg.kind == "u_lambda") {
      values[i] = u_lambda(y, cfg.z, cfg.lambda, cfg.beta);
    } else if (cfg.kind == "ell") {
      values[i] = ell(cfg.t, cfg.x, y, cfg.beta);
    } else if (cfg.kind == "max_density") {
      values[i] = y < std::max(cfg.a, cfg.b)
                      ? 0.0
                      : max_decomposition_density(cfg.a, cfg.b, cfg.T, cfg.lambda, y, cfg.beta);
    } else {
      values[i] = scale(y, cfg.beta);
    }
  }
  files.add("grid.csv", grid_csv(ys, values));
  json results{{"grid_points", ys.size()}};
  if (cfg.kind == "max_density") {
    results["laplace_rho"] = max_decomposition_mass(cfg.a, cfg.b, cfg.T, cfg.lambda, cfg.beta);
  }
  report["results"] = results;
}

void run_bridge(const RunConfig& cfg, OutputSet& files, json& report) {
  BridgeRequest req;
  req.t = cfg.t;
  req.T = cfg.T;
  req.a = cfg.a;
  req.b = cfg.b;
  req.params = SkewParams(cfg.beta, cfg.mu);
  req.max_attempts = cfg.bridge_budget;
  const auto n = static_cast<std::size_t>(cfg.n);
  std::vector<BridgeSample> samples(n);
  parallel_for_index(cfg.n, cfg.workers, [&](std::int64_t i) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
    try {
      samples[static_cast<std::size_t>(i)] = sample_skew_bridge_point(req, rng);
    } catch (const RejectionBudgetError& e) {
      throw RejectionBudgetError(e.what(), static_cast<std::size_t>(i));
    }
  });
  CsvText csv({"sample_id", "value", "attempts"});
  std::vector<double> xs(n);
  std::int64_t attempts = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = samples[i].value;
    attempts += samples[i].attempts;
    csv.cell(static_cast<long long>(i)).cell(samples[i].value).cell(
        static_cast<long long>(samples[i].attempts));
    csv.end_row();
  }
  files.add("samples.csv", csv.str());
  json results = summary(xs);
  results["bridge_proposals"] = attempts;
  results["acceptance_bridge"] = static_cast<double>(cfg.n) / static_cast<double>(attempts);
  results["log_bridge_bound"] = log_bridge_bound(req.t, req.T, req.a, req.b, req.params);
  report["results"] = results;
}

void run_exact(const RunConfig& cfg, OutputSet& files, json& report) {
  const LoadedModel lm = load_model(cfg.model);
  const DriftModel& m = lm.model;
  ExactOptions opt;
  opt.endpoint_budget = cfg.endpoint_budget;
  opt.outer_budget = cfg.outer_budget;
  opt.bridge_budget = cfg.bridge_budget;
  const double y0 = m.from_output(cfg.x0);
  const BatchResult r = run_batch(m, y0, cfg.T, cfg.n, cfg.workers, cfg.seed, opt);

  CsvText csv({"sample_id", "value", "n_poisson", "outer_attempts"});
  std::vector<double> xs(r.endpoints.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = m.to_output(r.endpoints[i]);
    csv.cell(static_cast<long long>(i)).cell(xs[i]).cell(
        static_cast<long long>(r.n_poisson[i])).cell(static_cast<long long>(r.outer_attempts[i]));
    csv.end_row();
  }
  files.add("samples.csv", csv.str());
  files.add("histogram.csv", histogram_csv(make_histogram(cfg, xs)));

  const AcceptanceStats& s = r.stats;
  json results = summary(xs);
  results["acceptance_outer"] = s.outer_ratio();
  results["acceptance_bridge"] = s.bridge_ratio();
  results["acceptance_bridge_per_trajectory"] = s.bridge_ratio_per_trajectory();
  results["acceptance_endpoint"] = s.endpoint_ratio();
  results["outer_proposals"] = s.outer_proposals;
  results["outer_accepts"] = s.outer_accepts;
  results["endpoint_proposals"] = s.endpoint_proposals;
  results["bridge_proposals"] = s.bridge_proposals;
  results["bridge_accepts"] = s.bridge_accepts;
  results["poisson_points"] = s.poisson_points;
  results["trajectories_with_bridges"] = s.trajectories_with_bridges;
  report["results"] = results;
  report["model"] = {{"name", m.name},
                     {"beta", m.params.beta},
                     {"mu", m.params.mu},
                     {"phi_bound", m.phi_bound},
                     {"proposal_drift", m.proposal_drift},
                     {"envelope_proven", m.envelope_proven}};
}

void run_euler(const RunConfig& cfg, OutputSet& files, json& report) {
  const LoadedModel lm = load_model(cfg.model);
  EulerConfig ec;
  ec.dt = cfg.dt;
  ec.T = cfg.T;
  ec.x0 = cfg.x0;
  ec.sde = lm.euler;
  const EulerBatch r = run_euler_batch(ec, cfg.n, cfg.workers, cfg.seed);
  CsvText csv({"sample_id", "value"});
  for (std::size_t i = 0; i < r.endpoints.size(); ++i) {
    csv.cell(static_cast<long long>(i)).cell(r.endpoints[i]);
    csv.end_row();
  }
  files.add("samples.csv", csv.str());
  files.add("histogram.csv", histogram_csv(make_histogram(cfg, r.endpoints)));
  json results = summary(r.endpoints);
  results["steps_per_path"] = static_cast<std::int64_t>(std::ceil(cfg.T / cfg.dt - 1e-9));
  report["results"] = results;
  report["model"] = {{"name", lm.model.name}, {"beta", lm.euler.beta}};
}

int run_validate(const RunConfig& cfg, std::ostream& out, OutputSet& files, json& report) {
  const auto checks = validation_suite(cfg.seed);
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  bool all = true;
  json rows = json::array();
  out << std::left << std::setw(static_cast<int>(width)) << "check" << "  status  detail\n";
  for (const auto& c : checks) {
    all = all && c.passed;
    out << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
        << (c.passed ? "pass  " : "FAIL  ") << "  " << c.detail << "\n";
    rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  out << (all ? "all checks passed\n" : "some checks failed\n");
  report["results"] = {{"checks", rows}, {"all_passed", all}};
  (void)files;
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int exit_code_for(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const UsageError&) {
    return kExitUsage;
  } catch (const DomainError&) {
    return kExitUsage;
  } catch (const RejectionBudgetError&) {
    return kExitRejectionBudget;
  } catch (const EnvelopeError&) {
    return kExitEnvelope;
  } catch (const AccuracyError&) {
    return kExitAccuracy;
  } catch (...) {
    return kExitFailure;
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    OutputSet files(cfg.out_dir);
    json report = base_report(cfg);
    const auto start = Clock::now();
    int code = kExitOk;
    switch (cfg.command) {
      case Command::density: run_density(cfg, files, report); break;
      case Command::analytics: run_analytics(cfg, files, report); break;
      case Command::bridge: run_bridge(cfg, files, report); break;
      case Command::exact: run_exact(cfg, files, report); break;
      case Command::euler: run_euler(cfg, files, report); break;
      case Command::validate: code = run_validate(cfg, out, files, report); break;
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report["runtime"] = runtime_block(cfg, seconds);
    files.add("report.json", dump(report));
    files.commit();
    if (cfg.command != Command::validate) {
      out << "skewsim: " << command_name(cfg.command) << " finished in " << seconds
          << " s, outputs in " << cfg.out_dir << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    err << "skewsim: error: " << e.what() << "\n";
    return exit_code_for(std::current_exception());
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    ParsedArgs parsed = parse_args(args, out, err);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config, out, err);
  } catch (const std::exception& e) {
    err << "skewsim: error: " << e.what() << "\n";
    return exit_code_for(std::current_exception());
  }
}

}  // namespace skewsim::cli
