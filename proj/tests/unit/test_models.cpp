#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "skewsim/errors.hpp"
#include "skewsim/models.hpp"
#include "skewsim/special.hpp"

using namespace skewsim;

TEST_CASE("mu_from_drift") {
  CHECK(mu_from_drift(1.3, 1.3, 0.4) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(mu_from_drift(-kPi / 2.0, -kPi / 2.0, 0.6) == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
  const double beta = (1.0 - kSqrt2) / (1.0 + kSqrt2);
  const double bp = -3.0 / 4.0;
  const double bm = 23.0 / (4.0 * kSqrt2);
  CHECK(mu_from_drift(bp, bm, beta) == doctest::Approx(-26.0 / (4.0 * (1.0 - kSqrt2))).epsilon(1e-14));
  CHECK(mu_from_drift(bp, bm, beta) == doctest::Approx(15.6924).epsilon(1e-5));
  CHECK_THROWS_AS(mu_from_drift(1.0, 2.0, 0.0), DomainError);
  CHECK(std::fabs(cancellation_coefficient(bp, bm, beta, mu_from_drift(bp, bm, beta))) < 1e-12);
}

TEST_CASE("phi_from_b") {
  const auto zero = phi_from_b([](double) { return 0.0; }, [](double) { return 0.0; }, 2.0);
  CHECK(zero(0.7) == 0.0);
  // example 1: phi - inf phi is the displayed phi_tilde
  const double mu = -kPi / 2.0;
  const auto phi = phi_from_b([mu](double x) { return -kPi / 2.0 * std::cos(kPi * x / 5.0) - mu; },
                              [](double x) { return kPi * kPi / 10.0 * std::sin(kPi * x / 5.0); }, mu);
  const DriftModel m = example1_model();
  double lo = 1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double x = -10.0 + 20.0 * i / 100000.0;
    CHECK(phi(x) + 7.0 * kPi * kPi / 40.0 == doctest::Approx(m.phi_tilde(x)).epsilon(1e-12));
    lo = std::min(lo, m.phi_tilde(x));
  }
  CHECK(lo >= -1e-12);
}

TEST_CASE("example 1 model") {
  const DriftModel m = example1_model();
  CHECK(m.params.beta == 0.6);
  CHECK(m.params.mu == doctest::Approx(-kPi / 2.0));
  CHECK(m.bigB(0.0) == 0.0);
  CHECK(m.phi_bound == doctest::Approx(9.0 * kPi * kPi / 20.0));
  const double x0 = 0.2;
  const double y = 1.0;
  const double mu = m.params.mu;
  const double displayed = 2.5 * (std::sin(kPi * x0 / 5.0) - std::sin(kPi * y / 5.0)) - mu * (y - x0);
  CHECK(m.bigB(y) - m.bigB(x0) == doctest::Approx(displayed).epsilon(1e-14));
  for (double x = -7.0; x < 7.0; x += 0.37) {
    if (std::fabs(x) < 1e-3) continue;
    const double h = 1e-5;
    CHECK((m.bigB(x + h) - m.bigB(x - h)) / (2.0 * h) == doctest::Approx(m.bbar(x) - mu).epsilon(1e-6));
  }
  const double g = gamma_factor(1.0, 0.2, m.params);
  CHECK(m.endpoint_envelope(1.0, 0.2) ==
        doctest::Approx(2.0 * 0.8 * g * std::exp(5.0 - mu * mu / 2.0)).epsilon(1e-13));
}

TEST_CASE("example 2 model") {
  const Example2 ex = example2_model();
  const double beta = (1.0 - kSqrt2) / (1.0 + kSqrt2);
  CHECK(ex.model.params.beta == doctest::Approx(beta).epsilon(1e-15));
  CHECK(ex.model.params.beta == doctest::Approx(-0.171573).epsilon(1e-6));
  CHECK(ex.model.params.mu == doctest::Approx(-26.0 / (4.0 * (1.0 - kSqrt2))).epsilon(1e-14));
  CHECK(ex.beta_x == doctest::Approx(-1.0 / 3.0));
  for (double x : {-3.0, -0.5, 0.0, 0.5, 3.0}) {
    CHECK(std::fabs(ex.phi_inverse(ex.phi(x)) - x) <= 1e-10);
  }
  CHECK(ex.phi(1.5) == doctest::Approx(2.0 * std::sqrt(1.5 * 1.5 + 1.5 + 1.0) - 2.0));
  CHECK(ex.model.bigB(0.0) == 0.0);
  CHECK(ex.model.phi_bound == 43.484375);
  // phi_tilde stays within [0, K] on a dense grid and approaches K at 0-
  double hi = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double y = -20.0 + 40.0 * i / 100000.0;
    const double v = ex.model.phi_tilde(y);
    CHECK(v >= 0.0);
    CHECK(v <= ex.model.phi_bound);
    hi = std::max(hi, v);
  }
  for (double y : {-1e-6, -1e-9, -1e-12}) hi = std::max(hi, ex.model.phi_tilde(y));
  CHECK(hi > 0.99 * ex.model.phi_bound);
  // B' = bbar - mu off zero
  const double mu = ex.model.params.mu;
  for (double y = -6.0; y < 6.0; y += 0.41) {
    if (std::fabs(y) < 1e-2) continue;
    const double h = 1e-5;
    CHECK((ex.model.bigB(y + h) - ex.model.bigB(y - h)) / (2.0 * h) ==
          doctest::Approx(ex.model.bbar(y) - mu).epsilon(1e-6));
  }
  // drift through the coefficient: bbar(y) = a'/(4 sqrt a) at Phi^{-1}(y)
  const DivergenceCoefficient c = example2_coefficient();
  for (double y : {-2.0, -0.3, 0.4, 2.5}) {
    const double x = ex.phi_inverse(y);
    CHECK(ex.model.bbar(y) == doctest::Approx(c.a_prime(x) / (4.0 * std::sqrt(c.a(x)))).epsilon(1e-12));
  }
}

TEST_CASE("generic Lamperti map") {
  DivergenceCoefficient one;
  one.a_plus = [](double) { return 1.0; };
  one.a_minus = [](double) { return 1.0; };
  one.a_plus_prime = [](double) { return 0.0; };
  one.a_minus_prime = [](double) { return 0.0; };
  one.lambda = 1.0;
  one.Lambda = 1.0;
  const LampertiMap id = lamperti(one);
  CHECK(id.beta == 0.0);
  CHECK(id.phi(1.7) == doctest::Approx(1.7).epsilon(1e-13));
  CHECK(id.drift(0.4) == 0.0);
  REQUIRE(id.mu.has_value());

  const LampertiMap map = lamperti(example2_coefficient());
  const Example2 ex = example2_model();
  CHECK(map.beta == doctest::Approx((1.0 - kSqrt2) / (1.0 + kSqrt2)).epsilon(1e-14));
  REQUIRE(map.mu.has_value());
  CHECK(*map.mu == doctest::Approx(ex.model.params.mu).epsilon(1e-12));
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    CHECK(map.phi(x) == doctest::Approx(ex.phi(x)).epsilon(1e-11));
    CHECK(std::fabs(map.phi_inverse(map.phi(x)) - x) <= 1e-10);
  }
  CHECK(map.drift(0.7) == doctest::Approx(ex.model.bbar(0.7)).epsilon(1e-9));

  DivergenceCoefficient bad = one;
  bad.a_minus = [](double) { return 0.0; };
  bad.lambda = 0.5;
  CHECK_THROWS_AS(lamperti(bad), DomainError);
}

TEST_CASE("custom model from key/value pairs") {
  std::map<std::string, std::string> kv{{"beta", "0.6"},
                                        {"bbar", "-(pi/2)*cos(pi*x/5)"},
                                        {"bbar_prime", "(pi^2/10)*sin(pi*x/5)"}};
  const DriftModel numeric = custom_model(kv);
  CHECK_FALSE(numeric.envelope_proven);
  CHECK(numeric.params.mu == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
  const DriftModel ex1 = example1_model();
  CHECK(numeric.bigB(1.3) == doctest::Approx(ex1.bigB(1.3)).epsilon(1e-10));
  CHECK(numeric.phi_bound >= 0.18 * kPi * kPi);
  RngStream rng(8, 0);
  for (int i = 0; i < 2000; ++i) CHECK_NOTHROW(sample_endpoint(numeric, 0.2, 1.0, rng));

  kv["B"] = "(pi/2)*x - 2.5*sin(pi*x/5)";
  kv["phi_tilde"] = "(pi^2/8)*cos(pi*x/5)^2 + (pi^2/20)*sin(pi*x/5) + pi^2/20";
  kv["phi_bound"] = "9*pi^2/20";
  kv["potential_sup"] = "2.5";
  const DriftModel closed = custom_model(kv);
  CHECK(closed.envelope_proven);
  // sup over y of B(y) + mu y is 2.5, tighter than the fixed 5 used by example1
  const double gap = 2.5 - 2.5 * std::sin(kPi * 0.2 / 5.0);
  CHECK(closed.log_endpoint_envelope(1.0, 0.2) ==
        doctest::Approx(ex1.log_endpoint_envelope(1.0, 0.2) - gap).epsilon(1e-12));

  kv["bogus"] = "1";
  CHECK_THROWS_AS(custom_model(kv), DomainError);
  CHECK_THROWS_AS(custom_model({{"beta", "0.5"}}), DomainError);
}

TEST_CASE("custom model with a jump at zero") {
  // bbar = 1 on x >= 0, -1 below; mu from the interface formula
  std::map<std::string, std::string> kv{{"beta", "0.5"},
                                        {"bbar", "piecewise(x >= 0 ? 1 : -1)"},
                                        {"bbar_prime", "0"},
                                        {"proposal_drift", "0"}};
  const DriftModel m = custom_model(kv);
  CHECK(m.bbar_plus0 == 1.0);
  CHECK(m.bbar_minus0 == -1.0);
  CHECK(m.params.mu == doctest::Approx(mu_from_drift(1.0, -1.0, 0.5)));
}

TEST_CASE("custom model file") {
  const char* path = "skewsim_unit_custom_model.txt";
  {
    std::ofstream out(path);
    out << "# example 1 again\nbeta = 0.6\nbbar = -(pi/2)*cos(pi*x/5)\n\nbbar_prime = (pi^2/10)*sin(pi*x/5)  # derivative\n";
  }
  const DriftModel m = custom_model_from_file(path);
  CHECK(m.params.beta == 0.6);
  std::remove(path);
  CHECK_THROWS_AS(custom_model_from_file("/nonexistent/model.txt"), DomainError);
}
