#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "skewsim/errors.hpp"
#include "skewsim/exactsim.hpp"
#include "skewsim/models.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/special.hpp"
#include "skewsim/stats.hpp"

using namespace skewsim;

TEST_CASE("poisson points") {
  RngStream rng(1, 0);
  CHECK(poisson_points(1.0, 0.0, rng).empty());
  const double K = 9.0 * kPi * kPi / 20.0;
  const int n = 100000;
  double count = 0.0;
  std::vector<double> times;
  for (int i = 0; i < n; ++i) {
    const auto pts = poisson_points(1.0, K, rng);
    count += static_cast<double>(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j > 0) CHECK(pts[j].time > pts[j - 1].time);
      CHECK(pts[j].mark >= 0.0);
      CHECK(pts[j].mark <= K);
      if (i < 5000) times.push_back(pts[j].time);
    }
  }
  CHECK(std::fabs(count / n - K) < 0.05);
  CHECK(ks_one_sample(times, [](double t) { return std::clamp(t, 0.0, 1.0); }).scaled < kKsCritical1pct);
  CHECK_THROWS_AS(poisson_points(0.0, 1.0, rng), DomainError);
}

TEST_CASE("null model endpoints follow p^{beta,mu}") {
  for (const SkewParams p : {SkewParams(0.6, -kPi / 2.0), SkewParams(-0.1716, 15.69)}) {
    const DriftModel m = constant_drift_model(p.beta, p.mu);
    const BatchResult r = run_batch(m, 0.2, 1.0, 5000, 1, 123);
    CHECK(r.stats.poisson_points == 0);
    CHECK(r.stats.outer_accepts == r.stats.outer_proposals);
    std::vector<double> xs = r.endpoints;
    std::sort(xs.begin(), xs.end());
    QuadratureOptions opt;
    opt.breakpoints = {0.2 + p.mu - 8.0, 0.2 + p.mu, 0.2 + p.mu + 8.0};
    const auto cdf = cumulative_integral([&](double y) { return skew_density(1.0, 0.2, y, p); }, xs, opt);
    CHECK(ks_one_sample_sorted(xs, cdf).scaled < kKsCritical1pct);
  }
}

TEST_CASE("batch output independent of worker count") {
  const DriftModel m = example1_model();
  const BatchResult a = run_batch(m, 0.2, 1.0, 300, 1, 99);
  const BatchResult b = run_batch(m, 0.2, 1.0, 300, 3, 99);
  CHECK(a.endpoints == b.endpoints);
  CHECK(a.n_poisson == b.n_poisson);
  CHECK(a.outer_attempts == b.outer_attempts);
  CHECK(a.stats.bridge_proposals == b.stats.bridge_proposals);
  CHECK(a.stats.trajectory_bridge_ratio_sum == b.stats.trajectory_bridge_ratio_sum);
}

TEST_CASE("example 1 skeleton invariants") {
  const DriftModel m = example1_model();
  RngStream rng(4, 0);
  for (int i = 0; i < 50; ++i) {
    const ExactDraw d = exact_skeleton(m, 0.2, 1.0, rng);
    const Skeleton& s = d.skeleton;
    CHECK(s.accepted);
    CHECK(s.values.size() == s.poisson_times.size());
    for (std::size_t j = 0; j < s.poisson_times.size(); ++j) {
      CHECK(s.poisson_times[j] > 0.0);
      CHECK(s.poisson_times[j] < 1.0);
      if (j > 0) CHECK(s.poisson_times[j] > s.poisson_times[j - 1]);
    }
    CHECK(d.stats.outer_accepts == 1);
    CHECK(d.stats.bridge_accepts <= d.stats.bridge_proposals);
    CHECK(d.stats.outer_proposals <= d.stats.endpoint_proposals);
  }
}

TEST_CASE("outer budget exhaustion is loud") {
  DriftModel m = example1_model();
  m.phi_bound = 200.0;
  m.phi_tilde = [](double) { return 200.0; };  // every Poisson point rejects
  ExactOptions opt;
  opt.outer_budget = 20;
  RngStream rng(5, 0);
  CHECK_THROWS_AS(exact_skeleton(m, 0.2, 1.0, rng, opt), RejectionBudgetError);
}

TEST_CASE("an undersized endpoint envelope is detected") {
  DriftModel m = example1_model();
  m.log_endpoint_envelope = [](double, double) { return -5.0; };
  RngStream rng(6, 0);
  CHECK_THROWS_AS(sample_endpoint(m, 0.2, 1.0, rng), EnvelopeError);
}

TEST_CASE("acceptance stats helpers") {
  AcceptanceStats a;
  CHECK(a.outer_ratio() == 0.0);
  a.outer_proposals = 4;
  a.outer_accepts = 1;
  a.bridge_proposals = 10;
  a.bridge_accepts = 5;
  a.trajectory_bridge_ratio_sum = 1.5;
  a.trajectories_with_bridges = 3;
  AcceptanceStats b = a;
  b += a;
  CHECK(b.outer_ratio() == 0.25);
  CHECK(b.bridge_ratio() == 0.5);
  CHECK(b.bridge_ratio_per_trajectory() == 0.5);
}
