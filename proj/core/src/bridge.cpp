#include "skewsim/bridge.hpp"

#include <cmath>
#include <sstream>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

constexpr double kEnvelopeSlack = 1e-12;

BridgeSample draw(const BridgeRequest& req, RngStream& rng, BridgeCounters* counters) {
  if (req.max_attempts < 1) throw DomainError("bridge: max_attempts must be >= 1");
  const bool trivial = req.params.beta == 0.0;
  for (std::int64_t attempt = 1; attempt <= req.max_attempts; ++attempt) {
    const double y = sample_brownian_bridge_point(req.t, req.T, req.a, req.b, rng);
    if (counters) ++counters->proposals;
    if (trivial) {
      if (counters) ++counters->accepts;
      return {y, attempt};
    }
    const double f = bridge_acceptance(req.t, req.T, req.a, req.b, y, req.params);
    if (f > 1.0 + kEnvelopeSlack || std::isnan(f)) {
      std::ostringstream msg;
      msg << "bridge envelope violated: ratio " << f << " at (t=" << req.t << ", T=" << req.T
          << ", a=" << req.a << ", b=" << req.b << ", y=" << y << ")";
      throw EnvelopeError(msg.str());
    }
    if (rng.uniform() <= f) {
      if (counters) ++counters->accepts;
      return {y, attempt};
    }
  }
  std::ostringstream msg;
  msg << "bridge: no acceptance within " << req.max_attempts << " proposals at (t=" << req.t
      << ", T=" << req.T << ", a=" << req.a << ", b=" << req.b << ")";
  throw RejectionBudgetError(msg.str());
}

}  // namespace

double sample_brownian_bridge_point(double t, double T, double a, double b, RngStream& rng) {
  if (!(T > 0.0) || !(t > 0.0) || !(t < T)) {
    throw DomainError("sample_brownian_bridge_point: requires 0 < t < T");
  }
  const double mean = a + (t / T) * (b - a);
  const double sd = std::sqrt(t * (T - t) / T);
  return mean + sd * rng.normal();
}

BridgeSample sample_skew_bridge_point(const BridgeRequest& req, RngStream& rng) {
  return draw(req, rng, nullptr);
}

std::vector<double> sample_skew_bridge_skeleton(const std::vector<double>& times, double T,
                                                double a, double b, const SkewParams& params,
                                                RngStream& rng, BridgeCounters* counters,
                                                const SkeletonVisitor& visit,
                                                std::int64_t max_attempts) {
  std::vector<double> values;
  values.reserve(times.size());
  double prev_t = 0.0;
  double prev = a;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double ti = times[i];
    if (!(ti > prev_t) || !(ti < T)) {
      throw DomainError("sample_skew_bridge_skeleton: times must increase strictly inside (0,T)");
    }
    BridgeRequest req;
    req.t = ti - prev_t;
    req.T = T - prev_t;
    req.a = prev;
    req.b = b;
    req.params = params;
    req.max_attempts = max_attempts;
    BridgeSample s;
    try {
      s = draw(req, rng, counters);
    } catch (const RejectionBudgetError& e) {
      throw RejectionBudgetError(e.what(), i);
    }
    values.push_back(s.value);
    prev_t = ti;
    prev = s.value;
    if (visit && !visit(i, s.value)) break;
  }
  return values;
}

}  // namespace skewsim
