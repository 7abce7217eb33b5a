#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skewsim/bridge.hpp"
#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"

namespace skewsim {

using RealFn = std::function<double(double)>;

/// Everything the exact algorithm needs to know about
/// dX = dW + bbar(X) dt + beta dL^0(X).
///
/// b = bbar - mu, B(u) = int_0^u b, phi_tilde = phi - inf phi in [0, phi_bound].
/// The endpoint envelope is log M with
///   exp(B(y)-B(x0)) p^{beta,mu}(T,x0,y) <= M * gauss_kernel(T, x0, y, proposal_drift).
struct DriftModel {
  std::string name;
  SkewParams params;
  RealFn bbar;
  double bbar_plus0 = 0.0;
  double bbar_minus0 = 0.0;
  RealFn bigB;
  RealFn phi_tilde;
  double phi_bound = 0.0;
  double proposal_drift = 0.0;
  std::function<double(double T, double x0)> log_endpoint_envelope;
  /// Maps the simulated coordinate to the reported one (identity unless a
  /// space change was applied, e.g. a Lamperti transform).
  RealFn to_output;
  RealFn from_output;
  /// True when phi_bound and the endpoint envelope come from closed forms.
  bool envelope_proven = true;

  double endpoint_envelope(double T, double x0) const;
};

struct PoissonPoint {
  double time;
  double mark;
};

struct Skeleton {
  double x0 = 0.0;
  double T = 0.0;
  std::vector<double> poisson_times;
  std::vector<double> values;
  double endpoint = 0.0;
  bool accepted = false;
};

struct AcceptanceStats {
  std::int64_t outer_proposals = 0;
  std::int64_t outer_accepts = 0;
  std::int64_t endpoint_proposals = 0;
  std::int64_t bridge_proposals = 0;
  std::int64_t bridge_accepts = 0;
  std::int64_t poisson_points = 0;
  /// Sum over outer proposals with at least one bridge draw of that
  /// proposal's own bridge acceptance ratio, and the number of such proposals.
  double trajectory_bridge_ratio_sum = 0.0;
  std::int64_t trajectories_with_bridges = 0;

  double outer_ratio() const;
  double bridge_ratio() const;
  /// Mean over trajectories of the within-trajectory bridge acceptance ratio.
  double bridge_ratio_per_trajectory() const;
  double endpoint_ratio() const;

  AcceptanceStats& operator+=(const AcceptanceStats& o);
};

struct ExactOptions {
  std::int64_t endpoint_budget = 1'000'000;
  std::int64_t outer_budget = 10'000'000;
  std::int64_t bridge_budget = kDefaultBridgeAttempts;
  /// Stop drawing skeleton points at the first failed thinning test.
  bool short_circuit = true;
};

/// Step 1: exact draw from h(y) ~ exp(B(y)-B(x0)) p^{beta,mu}(T,x0,y).
double sample_endpoint(const DriftModel& model, double x0, double T, RngStream& rng,
                       const ExactOptions& options = {}, AcceptanceStats* stats = nullptr);

/// Step 2: unit-rate Poisson points on [0,T] x [0,K], sorted by time.
std::vector<PoissonPoint> poisson_points(double T, double K, RngStream& rng);

struct ExactDraw {
  Skeleton skeleton;
  AcceptanceStats stats;
};

/// Steps 1-4 repeated until a skeleton is accepted.
ExactDraw exact_skeleton(const DriftModel& model, double x0, double T, RngStream& rng,
                         const ExactOptions& options = {});

struct BatchResult {
  std::vector<double> endpoints;          ///< simulated coordinate, index order
  std::vector<std::int64_t> n_poisson;    ///< Poisson points of the accepted skeleton
  std::vector<std::int64_t> outer_attempts;
  AcceptanceStats stats;
  double seconds = 0.0;
};

/// n independent exact endpoints; sample i uses RngStream(seed, i), so the
/// output does not depend on the number of workers.
BatchResult run_batch(const DriftModel& model, double x0, double T, std::int64_t n,
                      unsigned workers, std::uint64_t seed, const ExactOptions& options = {});

/// Runs body(i) for i in [0,n) on `workers` threads. The exception of the
/// lowest failing index is rethrown; remaining work is abandoned.
void parallel_for_index(std::int64_t n, unsigned workers,
                        const std::function<void(std::int64_t)>& body);

}  // namespace skewsim
