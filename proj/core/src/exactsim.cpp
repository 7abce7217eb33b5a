#include "skewsim/exactsim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

constexpr double kEnvelopeSlack = 1e-12;

double ratio(std::int64_t num, std::int64_t den) {
  return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

double DriftModel::endpoint_envelope(double T, double x0) const {
  return std::exp(log_endpoint_envelope(T, x0));
}

double AcceptanceStats::outer_ratio() const { return ratio(outer_accepts, outer_proposals); }
double AcceptanceStats::bridge_ratio() const { return ratio(bridge_accepts, bridge_proposals); }
double AcceptanceStats::endpoint_ratio() const {
  return ratio(outer_proposals, endpoint_proposals);
}
double AcceptanceStats::bridge_ratio_per_trajectory() const {
  return trajectories_with_bridges > 0
             ? trajectory_bridge_ratio_sum / static_cast<double>(trajectories_with_bridges)
             : 0.0;
}

AcceptanceStats& AcceptanceStats::operator+=(const AcceptanceStats& o) {
  outer_proposals += o.outer_proposals;
  outer_accepts += o.outer_accepts;
  endpoint_proposals += o.endpoint_proposals;
  bridge_proposals += o.bridge_proposals;
  bridge_accepts += o.bridge_accepts;
  poisson_points += o.poisson_points;
  trajectory_bridge_ratio_sum += o.trajectory_bridge_ratio_sum;
  trajectories_with_bridges += o.trajectories_with_bridges;
  return *this;
}

double sample_endpoint(const DriftModel& model, double x0, double T, RngStream& rng,
                       const ExactOptions& options, AcceptanceStats* stats) {
  if (!(T > 0.0)) throw DomainError("sample_endpoint: T must be > 0");
  const SkewParams& p = model.params;
  const double s = model.proposal_drift;
  const double log_m = model.log_endpoint_envelope(T, x0);
  const double drift_const = (p.mu * p.mu - s * s) * T / 2.0;
  const double sqrt_t = std::sqrt(T);
  for (std::int64_t k = 0; k < options.endpoint_budget; ++k) {
    const double y = x0 + s * T + sqrt_t * rng.normal();
    if (stats) ++stats->endpoint_proposals;
    // exp(B(y)-B(x0)) p^{beta,mu}(T,x0,y) / gauss_kernel(T,x0,y,s)
    const double log_f = model.bigB(y) - model.bigB(x0) + (p.mu - s) * (y - x0) - drift_const +
                         log_density_ratio(T, x0, y, p) - log_m;
    if (log_f > kEnvelopeSlack || std::isnan(log_f)) {
      std::ostringstream msg;
      msg << "endpoint envelope violated for model '" << model.name << "': log ratio " << log_f
          << " at y=" << y;
      throw EnvelopeError(msg.str());
    }
    if (std::log(rng.uniform()) <= log_f) return y;
  }
  std::ostringstream msg;
  msg << "endpoint: no acceptance within " << options.endpoint_budget << " proposals";
  throw RejectionBudgetError(msg.str());
}

std::vector<PoissonPoint> poisson_points(double T, double K, RngStream& rng) {
  if (!(T > 0.0)) throw DomainError("poisson_points: T must be > 0");
  if (!(K >= 0.0) || !std::isfinite(K)) throw DomainError("poisson_points: K must be >= 0");
  std::vector<PoissonPoint> pts;
  if (K == 0.0) return pts;
  double t = 0.0;
  for (;;) {
    t += rng.exponential() / K;
    if (!(t < T)) break;
    pts.push_back({t, K * rng.uniform()});
  }
  return pts;
}

ExactDraw exact_skeleton(const DriftModel& model, double x0, double T, RngStream& rng,
                         const ExactOptions& options) {
  ExactDraw out;
  AcceptanceStats& st = out.stats;
  for (std::int64_t outer = 0; outer < options.outer_budget; ++outer) {
    const double z = sample_endpoint(model, x0, T, rng, options, &st);
    ++st.outer_proposals;
    const std::vector<PoissonPoint> pts = poisson_points(T, model.phi_bound, rng);
    st.poisson_points += static_cast<std::int64_t>(pts.size());

    std::vector<double> times;
    times.reserve(pts.size());
    for (const auto& pt : pts) times.push_back(pt.time);

    bool ok = true;
    BridgeCounters counters;
    auto visit = [&](std::size_t i, double v) {
      if (model.phi_tilde(v) > pts[i].mark) {
        ok = false;
        return !options.short_circuit;
      }
      return true;
    };
    std::vector<double> values =
        sample_skew_bridge_skeleton(times, T, x0, z, model.params, rng, &counters, visit,
                                    options.bridge_budget);
    st.bridge_proposals += counters.proposals;
    st.bridge_accepts += counters.accepts;
    if (counters.proposals > 0) {
      st.trajectory_bridge_ratio_sum += ratio(counters.accepts, counters.proposals);
      ++st.trajectories_with_bridges;
    }
    if (ok) {
      ++st.outer_accepts;
      out.skeleton.x0 = x0;
      out.skeleton.T = T;
      out.skeleton.poisson_times = std::move(times);
      out.skeleton.values = std::move(values);
      out.skeleton.endpoint = z;
      out.skeleton.accepted = true;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "exact_skeleton: no accepted skeleton within " << options.outer_budget << " proposals";
  throw RejectionBudgetError(msg.str());
}

void parallel_for_index(std::int64_t n, unsigned workers,
                        const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  if (workers == 0) workers = 1;
  if (static_cast<std::int64_t>(workers) > n) workers = static_cast<unsigned>(n);
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::int64_t failed_index = n;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
        stop.store(true);
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

BatchResult run_batch(const DriftModel& model, double x0, double T, std::int64_t n,
                      unsigned workers, std::uint64_t seed, const ExactOptions& options) {
  if (n < 1) throw DomainError("run_batch: n must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  BatchResult res;
  res.endpoints.assign(static_cast<std::size_t>(n), 0.0);
  res.n_poisson.assign(static_cast<std::size_t>(n), 0);
  res.outer_attempts.assign(static_cast<std::size_t>(n), 0);
  std::vector<AcceptanceStats> per(static_cast<std::size_t>(n));

  parallel_for_index(n, workers, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const auto k = static_cast<std::size_t>(i);
    try {
      ExactDraw d = exact_skeleton(model, x0, T, rng, options);
      res.endpoints[k] = d.skeleton.endpoint;
      res.n_poisson[k] = static_cast<std::int64_t>(d.skeleton.poisson_times.size());
      res.outer_attempts[k] = d.stats.outer_proposals;
      per[k] = d.stats;
    } catch (const RejectionBudgetError& e) {
      throw RejectionBudgetError("sample " + std::to_string(i) + ": " + e.what(),
                                 static_cast<std::size_t>(i));
    } catch (const EnvelopeError& e) {
      throw EnvelopeError("sample " + std::to_string(i) + ": " + e.what());
    }
  });
  for (const auto& s : per) res.stats += s;
  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace skewsim
