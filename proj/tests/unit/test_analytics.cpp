#include <doctest.h>

#include <cmath>

#include "skewsim/analytics.hpp"
#include "skewsim/errors.hpp"
#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"

using namespace skewsim;

TEST_CASE("scale and speed") {
  for (double beta : {-0.6, 0.3}) {
    CHECK(scale(0.0, beta) == 0.0);
    for (double x : {-1.0, 2.0}) CHECK(scale_slope(x, beta) * speed_slope(x, beta) == doctest::Approx(2.0));
    CHECK(scale(1.0, beta) > scale(-1.0, beta));
  }
}

TEST_CASE("ell") {
  CHECK(ell(1.0, 0.4, -1.1, 0.6) == doctest::Approx(ell(1.0, -1.1, 0.4, 0.6)).epsilon(1e-14));
  CHECK(ell(1.0, 0.4, 1.1, 0.6) == doctest::Approx(ell(1.0, 1.1, 0.4, 0.6)).epsilon(1e-14));
  CHECK(ell(0.7, -0.2, 0.5, 0.0) == doctest::Approx(gauss_kernel(0.7, -0.2, 0.5, 0.0)).epsilon(1e-14));
  CHECK(ell(0.7, 0.3, 0.5, 0.0) == doctest::Approx(gauss_kernel(0.7, 0.3, 0.5, 0.0)).epsilon(1e-14));
  RngStream rng(1, 0);
  for (double beta : {-0.6, -0.1716, 0.3, 0.6}) {
    for (int i = 0; i < 50; ++i) {
      const double t = 0.1 + 2.0 * rng.uniform();
      const double x = 4.0 * rng.uniform() - 2.0;
      const double y = 4.0 * rng.uniform() - 2.0;
      CHECK(ell(t, x, y, beta) * speed_slope(y, beta) ==
            doctest::Approx(skew_density(t, x, y, SkewParams(beta, 0.0))).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(ell(0.0, 0.0, 0.0, 0.1), DomainError);
}

TEST_CASE("u_lambda cases") {
  CHECK(u_lambda(0.7, 0.7, 1.0, 0.6) == 1.0);
  CHECK(u_lambda(1.5, 0.5, 2.0, 0.0) == doctest::Approx(std::exp(-2.0 * 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(u_lambda(0.0, 1.0, 0.0, 0.3), DomainError);
  CHECK_THROWS_AS(u_lambda(0.0, 1.0, 1.0, SkewParams(0.3, 0.1)), DomainError);
  // beta = 0 is the Brownian transform e^{-k|x-z|}
  for (double x : {-2.0, -0.5, 0.0, 0.4, 3.0}) {
    for (double z : {-1.0, 0.5, 2.0}) {
      CHECK(u_lambda(x, z, 1.3, 0.0) ==
            doctest::Approx(std::exp(-std::sqrt(2.6) * std::fabs(x - z))).epsilon(1e-12));
    }
  }
}

TEST_CASE("u_lambda solves the Dynkin problem") {
  for (double beta : {-0.6, -0.1716, 0.3, 0.6}) {
    for (double x : {-1.3, 0.7}) CHECK(u_lambda_ode_residual(x, 2.0, 1.0, beta) <= 1e-5);
    for (double x : {-0.4, 1.5}) CHECK(u_lambda_ode_residual(x, -1.0, 1.0, beta) <= 1e-5);
    CHECK(u_lambda_flux_residual(2.0, 1.0, beta) <= 1e-4);
    CHECK(u_lambda_flux_residual(-1.0, 1.0, beta) <= 1e-4);
    // continuity at 0
    CHECK(u_lambda(1e-12, 2.0, 1.0, beta) == doctest::Approx(u_lambda(-1e-12, 2.0, 1.0, beta)).epsilon(1e-10));
    CHECK(u_lambda(1e-12, -1.0, 1.0, beta) == doctest::Approx(u_lambda(-1e-12, -1.0, 1.0, beta)).epsilon(1e-10));
  }
}

TEST_CASE("u_lambda monotone in lambda and distance") {
  double prev = 1.0;
  for (double lambda : {0.1, 0.5, 1.0, 4.0, 20.0}) {
    const double v = u_lambda(-0.3, 1.2, lambda, 0.6);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  prev = 1.0;
  for (double x = 1.9; x > -3.0; x -= 0.1) {
    const double v = u_lambda(x, 2.0, 1.0, 0.6);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("max decomposition density") {
  for (double z = 0.5; z < 6.0; z += 0.1) CHECK(max_decomposition_density(0.0, 0.5, 1.0, 1.0, z, 0.6) >= 0.0);
  CHECK_THROWS_AS(max_decomposition_density(0.0, 0.5, 1.0, 1.0, 0.4, 0.6), DomainError);
  double prev = INFINITY;
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const double v = max_decomposition_mass(0.0, 0.5, 1.0, lambda, 0.6);
    CHECK(v > 0.0);
    CHECK(v <= prev);
    prev = v;
  }
}
