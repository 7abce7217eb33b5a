#include <doctest.h>

#include <cmath>
#include <limits>

#include "skewsim/errors.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/skewlaw.hpp"
#include "skewsim/special.hpp"

using namespace skewsim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double phi(double x) { return std::exp(-x * x / 2.0) / kSqrt2Pi; }

struct Case {
  const char* name;
  double (*f)(double);
  double lo;
  double hi;
  double truth;
};

}  // namespace

TEST_CASE("catalogue of analytic integrals") {
  const Case cases[] = {
      {"gauss m0", [](double x) { return phi(x); }, -kInf, kInf, 1.0},
      {"gauss m1", [](double x) { return x * phi(x); }, -kInf, kInf, 0.0},
      {"gauss m2", [](double x) { return x * x * phi(x); }, -kInf, kInf, 1.0},
      {"gauss m3", [](double x) { return x * x * x * phi(x); }, -kInf, kInf, 0.0},
      {"gauss m4", [](double x) { return x * x * x * x * phi(x); }, -kInf, kInf, 3.0},
      {"half gauss", [](double x) { return phi(x); }, 0.0, kInf, 0.5},
      {"left half gauss", [](double x) { return phi(x); }, -kInf, 0.0, 0.5},
      {"gauss tail", [](double x) { return phi(x); }, 1.0, kInf, 0.15865525393145707},
      {"shifted gauss", [](double x) { return phi(x - 3.0); }, -kInf, kInf, 1.0},
      {"shifted gauss m1", [](double x) { return x * phi(x + 2.5); }, -kInf, kInf, -2.5},
      {"wide gauss", [](double x) { return phi(x / 4.0) / 4.0; }, -kInf, kInf, 1.0},
      {"narrow gauss", [](double x) { return phi(x / 0.05) / 0.05; }, -kInf, kInf, 1.0},
      {"kinked gauss", [](double x) { return x >= 0.0 ? 1.6 * phi(x) : 0.4 * phi(x); }, -kInf,
       kInf, 1.0},
      {"kinked shifted", [](double x) { return x >= 0.0 ? 2.0 * phi(x - 1.0) : 0.0; }, -kInf,
       kInf, 2.0 * (1.0 - 0.15865525393145707)},
      {"abs gauss", [](double x) { return std::fabs(x) * phi(x); }, -kInf, kInf,
       2.0 / kSqrt2Pi},
      {"polynomial", [](double x) { return 3.0 * x * x; }, 0.0, 1.0, 1.0},
      {"cubic", [](double x) { return x * x * x; }, -1.0, 2.0, 3.75},
      {"exponential", [](double x) { return std::exp(-x); }, 0.0, kInf, 1.0},
      {"laplace", [](double x) { return 0.5 * std::exp(-std::fabs(x)); }, -kInf, kInf, 1.0},
      {"cosine", [](double x) { return std::cos(x); }, 0.0, kPi / 2.0, 1.0},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    const QuadratureResult r = integrate(c.f, c.lo, c.hi, 1e-10);
    CHECK(std::fabs(r.value - c.truth) <= std::max(1e-10, r.error_estimate) + 1e-15);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.evaluations > 0);
  }
}

TEST_CASE("polynomial to 1e-12") {
  const auto r = integrate([](double y) { return 3.0 * y * y; }, 0.0, 1.0, 1e-12);
  CHECK(std::fabs(r.value - 1.0) <= 1e-12);
}

TEST_CASE("reversed limits change sign") {
  const auto r = integrate([](double y) { return y; }, 1.0, 0.0, 1e-12);
  CHECK(r.value == doctest::Approx(-0.5));
}

TEST_CASE("error estimate bounds a refined computation") {
  auto f = [](double x) { return x >= 0.0 ? 1.6 * phi(x - 0.3) : 0.4 * phi(x - 0.3); };
  const auto coarse = integrate(f, -kInf, kInf, 1e-6);
  const auto fine = integrate(f, -kInf, kInf, 1e-13);
  CHECK(std::fabs(coarse.value - fine.value) <= std::max(coarse.error_estimate, 1e-6));
}

TEST_CASE("skew density normalizes under quadrature at two tolerances") {
  const SkewParams p(0.6, -kPi / 2.0);
  auto f = [&](double y) { return skew_density(1.0, 0.2, y, p); };
  const auto a = integrate(f, -kInf, kInf, 1e-10);
  const auto b = integrate(f, -kInf, kInf, 1e-12);
  CHECK(std::fabs(a.value - 1.0) <= 1e-8);
  CHECK(std::fabs(a.value - b.value) <= 1e-9);
}

TEST_CASE("non-convergence raises AccuracyError with partial result") {
  auto f = [](double x) { return std::sin(1.0 / x) / x; };
  QuadratureOptions opt;
  opt.tol = 1e-14;
  opt.max_depth = 3;
  try {
    integrate(f, 1e-4, 1.0, opt);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(std::isfinite(e.partial_value()));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("cumulative integral matches the normal cdf") {
  std::vector<double> pts{-3.0, -1.0, 0.0, 0.0, 0.5, 2.0};
  const auto c = cumulative_integral([](double x) { return phi(x); }, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(c[i] == doctest::Approx(nc(-pts[i])).epsilon(1e-10));
  }
}
