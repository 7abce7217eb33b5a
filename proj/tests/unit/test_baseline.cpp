#include <doctest.h>

#include <cmath>

#include "skewsim/baseline.hpp"
#include "skewsim/errors.hpp"
#include "skewsim/models.hpp"
#include "skewsim/special.hpp"
#include "skewsim/stats.hpp"

using namespace skewsim;

TEST_CASE("g transform") {
  CHECK(g_transform(0.0, 0.6) == 0.0);
  CHECK(g_transform(1.0, 0.6) == doctest::Approx(0.4));
  CHECK(g_transform(-1.0, 0.6) == doctest::Approx(-1.6));
  for (double x : {-2.0, -1e-9, 0.0, 1e-9, 2.0}) CHECK(g_inverse(g_transform(x, 0.6), 0.6) == x);
  CHECK_THROWS_AS(g_transform(1.0, 1.0), DomainError);
}

TEST_CASE("driftless symmetric Euler is Brownian") {
  EulerConfig cfg;
  cfg.dt = 0.05;
  cfg.T = 1.0;
  cfg.x0 = 0.0;
  cfg.sde.beta = 0.0;
  cfg.sde.sigma = [](double) { return 1.0; };
  cfg.sde.drift = [](double) { return 0.0; };
  const EulerBatch b = run_euler_batch(cfg, 100000, 1, 3);
  const MeanCi m = mean_ci(b.endpoints);
  double s2 = 0.0;
  for (double x : b.endpoints) s2 += (x - m.mean) * (x - m.mean);
  CHECK(std::fabs(s2 / (b.endpoints.size() - 1.0) - 1.0) < 0.02);
}

TEST_CASE("linear drift matches the Gaussian law") {
  EulerConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  cfg.x0 = 0.3;
  cfg.sde.beta = 0.0;
  cfg.sde.sigma = [](double) { return 1.0; };
  cfg.sde.drift = [](double x) { return -x; };
  const EulerBatch b = run_euler_batch(cfg, 20000, 1, 4);
  // Ornstein-Uhlenbeck: mean x0 e^{-T}, variance (1 - e^{-2T})/2
  const double mean = 0.3 * std::exp(-1.0);
  const double sd = std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
  CHECK(ks_one_sample(b.endpoints, [&](double y) { return 1.0 - nc((y - mean) / sd); }).scaled < kKsCritical1pct);
}

TEST_CASE("skewness at zero") {
  // pure skew BM from 0: P(X_T > 0) = (1+beta)/2
  EulerConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 1.0;
  cfg.x0 = 0.0;
  cfg.sde.beta = 0.6;
  cfg.sde.sigma = [](double) { return 1.0; };
  cfg.sde.drift = [](double) { return 0.0; };
  const EulerBatch b = run_euler_batch(cfg, 20000, 1, 5);
  double pos = 0.0;
  for (double x : b.endpoints) pos += x > 0.0;
  CHECK(std::fabs(pos / b.endpoints.size() - 0.8) < 0.015);
}

TEST_CASE("step budget guard") {
  EulerConfig cfg;
  cfg.dt = 1e-9;
  cfg.T = 1.0;
  cfg.sde = euler_sde(example1_model());
  RngStream rng(1, 0);
  CHECK_THROWS_AS(euler_endpoint(cfg, rng), DomainError);
}

TEST_CASE("divergence-form sde") {
  const EulerSde sde = euler_sde(example2_coefficient(), -1.0 / 3.0);
  CHECK(sde.sigma(0.5) == doctest::Approx(std::sqrt(example2_coefficient().a(0.5))));
  CHECK(sde.drift(-0.5) == doctest::Approx(0.5 * example2_coefficient().a_prime(-0.5)));
}
