#include <doctest.h>

#include <cmath>

#include "skewsim/errors.hpp"
#include "skewsim/special.hpp"

using namespace skewsim;

TEST_CASE("nc values and symmetry") {
  CHECK(nc(0.0) == doctest::Approx(0.5).epsilon(1e-16));
  for (double x : {0.3, 1.7, 4.0}) CHECK(nc(x) + nc(-x) == doctest::Approx(1.0).epsilon(1e-15));
  // high-precision tail integral
  CHECK(nc(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(nc(-8.0) > 1.0 - 1e-14);
  CHECK(nc(8.0) < 1e-14);
  CHECK(nc(8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-12));
}

TEST_CASE("nc is nonincreasing") {
  double prev = 1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = -20.0 + 0.01 * i;
    const double v = nc(x);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("nc rejects non-finite input") {
  CHECK_THROWS_AS(nc(std::nan("")), DomainError);
  CHECK_THROWS_AS(nc(INFINITY), DomainError);
  CHECK_THROWS_AS(mills(-INFINITY), DomainError);
}

TEST_CASE("mills kernel") {
  CHECK(mills(0.0) == 0.5);
  for (double z : {0.1, 1.0, 5.0, 20.0}) CHECK(z * kSqrt2Pi * mills(z) < 1.0);
  const double z = 20.0;
  const double asym = 1.0 / (z * kSqrt2Pi) * (1.0 - 1.0 / (z * z) + 3.0 / (z * z * z * z));
  CHECK(std::fabs(mills(z) / asym - 1.0) < 3e-3);
  CHECK(std::isfinite(mills(30.0)));
  CHECK(std::isfinite(mills(1e6)));
}

TEST_CASE("mills matches the direct product") {
  for (double z = -25.0; z <= 25.0; z += 0.37) {
    const double direct = std::exp(z * z / 2.0) * nc(z);
    CHECK(mills(z) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("mills strictly decreasing on z >= 0") {
  double prev = mills(0.0);
  for (double z = 0.05; z <= 40.0; z += 0.05) {
    const double v = mills(z);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("log_mills and log_nc stay finite") {
  CHECK(std::isfinite(log_mills(-60.0)));
  CHECK(log_mills(-60.0) == doctest::Approx(1800.0 + std::log1p(-nc(60.0))).epsilon(1e-14));
  CHECK(log_mills(3.0) == doctest::Approx(std::log(mills(3.0))).epsilon(1e-14));
  CHECK(std::isfinite(log_nc(50.0)));
  CHECK(log_nc(50.0) == doctest::Approx(-1250.0 + std::log(mills(50.0))).epsilon(1e-14));
}

TEST_CASE("normal_quantile round trip") {
  for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.77, 0.99, 1.0 - 1e-9}) {
    const double x = normal_quantile(p);
    CHECK(nc(-x) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
}

TEST_CASE("log_add_exp") {
  CHECK(log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(log_add_exp(-INFINITY, 1.5) == 1.5);
  CHECK(log_add_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
}
