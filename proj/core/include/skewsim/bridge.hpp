#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"

namespace skewsim {

inline constexpr std::int64_t kDefaultBridgeAttempts = 1'000'000;

struct BridgeRequest {
  double t = 0.0;
  double T = 1.0;
  double a = 0.0;  ///< value at time 0
  double b = 0.0;  ///< value at time T
  SkewParams params;
  std::int64_t max_attempts = kDefaultBridgeAttempts;
};

struct BridgeSample {
  double value = 0.0;
  std::int64_t attempts = 0;
};

/// Proposal/acceptance tallies accumulated across bridge draws.
struct BridgeCounters {
  std::int64_t proposals = 0;
  std::int64_t accepts = 0;
};

/// Normal(a + (t/T)(b-a), t(T-t)/T).
double sample_brownian_bridge_point(double t, double T, double a, double b, RngStream& rng);

/// Exact draw from q^{beta,mu}(t,T,a,b,.) by rejection against the
/// Brownian bridge. Throws EnvelopeError if an acceptance ratio exceeds 1
/// and RejectionBudgetError when max_attempts proposals are all rejected.
BridgeSample sample_skew_bridge_point(const BridgeRequest& req, RngStream& rng);

/// Called after each skeleton point; returning false stops the skeleton early.
using SkeletonVisitor = std::function<bool(std::size_t index, double value)>;

/// Values of the bridge from (0,a) to (T,b) at the sorted times, drawn
/// left to right, each conditioned on the previous value and on (T,b).
/// If `visit` stops the walk, the result holds only the points drawn so far.
std::vector<double> sample_skew_bridge_skeleton(const std::vector<double>& times, double T,
                                                double a, double b, const SkewParams& params,
                                                RngStream& rng, BridgeCounters* counters = nullptr,
                                                const SkeletonVisitor& visit = {},
                                                std::int64_t max_attempts = kDefaultBridgeAttempts);

}  // namespace skewsim
