#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "run.hpp"
#include "skewsim/analytics.hpp"
#include "skewsim/errors.hpp"
#include "skewsim/expr.hpp"
#include "skewsim/models.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/rng.hpp"
#include "skewsim/skewlaw.hpp"
#include "skewsim/stats.hpp"

namespace skewsim::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

double mass(double t, double x, const SkewParams& p) {
  QuadratureOptions opt;
  const double c = x + p.mu * t;
  opt.breakpoints = {c - 8.0 * std::sqrt(t), c, c + 8.0 * std::sqrt(t), x, -x};
  return integrate([&](double y) { return skew_density(t, x, y, p); }, -kInf, kInf, opt).value;
}

CheckResult philox_vector() {
  const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              {0xffffffffu, 0xffffffffu});
  const bool ok = out[0] == 0x408f276du && out[1] == 0x41c83b0eu && out[2] == 0xa20bc7c6u &&
                  out[3] == 0x6d5451fdu;
  return {"philox known-answer vector", ok, ok ? "match" : "mismatch"};
}

CheckResult quadrature_catalogue() {
  double worst = 0.0;
  auto track = [&](double got, double want) {
    worst = std::max(worst, std::fabs(got - want) / std::max(1.0, std::fabs(want)));
  };
  track(integrate([](double x) { return std::exp(-x * x); }, -kInf, kInf, 1e-12).value,
        std::sqrt(kPi));
  track(integrate([](double x) { return std::exp(-x); }, 0.0, kInf, 1e-12).value, 1.0);
  track(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10).value, 2.0 / 3.0);
  track(integrate([](double x) { return 1.0 / (1.0 + x * x); }, -kInf, kInf, 1e-12).value, kPi);
  return {"quadrature catalogue", worst <= 1e-10, "max rel error " + sci(worst)};
}

CheckResult density_normalization() {
  double worst = 0.0;
  for (const SkewParams p : {SkewParams(0.6, -kPi / 2.0), SkewParams(-0.1716, 15.69)}) {
    for (double t : {0.1, 1.0}) {
      for (double x : {-1.0, 0.0, 0.4}) worst = std::max(worst, std::fabs(mass(t, x, p) - 1.0));
    }
  }
  return {"density normalization", worst <= 1e-8, "max |mass - 1| " + sci(worst)};
}

CheckResult chapman_kolmogorov() {
  const SkewParams p(0.6, -kPi / 2.0);
  double worst = 0.0;
  for (double y : {-0.8, 0.0, 0.9}) {
    const double x = 0.2;
    QuadratureOptions opt;
    opt.breakpoints = {x - 6.0, x + 6.0, y};
    const double two_step =
        integrate([&](double z) { return skew_density(0.4, x, z, p) * skew_density(0.6, z, y, p); },
                  -kInf, kInf, opt)
            .value;
    const double direct = skew_density(1.0, x, y, p);
    worst = std::max(worst, std::fabs(two_step - direct) / direct);
  }
  return {"chapman-kolmogorov", worst <= 1e-6, "max rel error " + sci(worst)};
}

CheckResult bridge_envelope(std::uint64_t seed) {
  RngStream rng(seed, 0);
  const SkewParams p(0.6, -kPi / 2.0);
  int violations = 0;
  for (int i = 0; i < 2000; ++i) {
    const double T = rng.uniform(0.05, 2.0);
    const double t = T * rng.uniform();
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    const double y = rng.uniform(-4.0, 4.0);
    const double lhs = log_bridge_density(t, T, a, b, y, p);
    const double rhs = log_bridge_bound(t, T, a, b, p) + log_brownian_bridge_density(t, T, a, b, y);
    if (lhs > rhs + 1e-12) ++violations;
  }
  return {"bridge envelope", violations == 0, std::to_string(violations) + " violations / 2000"};
}

CheckResult model_audits() {
  try {
    const DriftModel m1 = example1_model();
    const Example2 m2 = example2_model();
    audit_model(m1);
    return {"model audits", true, "example1, example2"};
  } catch (const Error& e) {
    return {"model audits", false, e.what()};
  }
}

CheckResult hitting_transform() {
  double ode = 0.0;
  double flux = 0.0;
  for (double beta : {-0.5, 0.3, 0.6}) {
    for (double x : {-1.3, -0.4, 0.5, 1.7}) ode = std::max(ode, u_lambda_ode_residual(x, 0.9, 1.0, beta));
    flux = std::max(flux, u_lambda_flux_residual(0.9, 1.0, beta));
    flux = std::max(flux, u_lambda_flux_residual(-0.9, 1.0, beta));
  }
  const bool ok = ode <= 1e-5 && flux <= 1e-4;
  return {"hitting-time transform", ok, "ode " + sci(ode) + ", flux " + sci(flux)};
}

CheckResult speed_kernel() {
  double worst = 0.0;
  for (double x : {-0.7, 0.0, 0.6}) {
    for (double y : {-1.1, -0.2, 0.3, 1.4}) {
      const double lhs = ell(0.9, x, y, 0.6) * speed_slope(y, 0.6);
      const double rhs = skew_density(0.9, x, y, SkewParams(0.6, 0.0));
      worst = std::max(worst, std::fabs(lhs - rhs) / rhs);
    }
  }
  return {"speed-measure kernel", worst <= 1e-10, "max rel error " + sci(worst)};
}

CheckResult joint_law() {
  const double beta = 0.6;
  const double x = 0.5;
  double worst = 0.0;
  for (double y : {-0.7, 0.7}) {
    const double cont =
        integrate([&](double l) { return joint_position_local_time(1.0, x, y, l, beta).continuous_part; },
                  0.0, kInf, 1e-12)
            .value;
    const double atom = joint_position_local_time(1.0, x, y, 0.0, beta).atom_at_zero;
    const double p = skew_density(1.0, x, y, SkewParams(beta, 0.0));
    worst = std::max(worst, std::fabs(cont + atom - p));
  }
  return {"joint position/local-time law", worst <= 1e-8, "max marginal error " + sci(worst)};
}

CheckResult histogram_mass(std::uint64_t seed) {
  RngStream rng(seed, 1);
  std::vector<double> xs(20000);
  for (auto& v : xs) v = rng.normal();
  const Histogram h = histogram_auto(xs, 50);
  double sum = 0.0;
  for (double d : h.density) sum += d * h.width();
  return {"histogram normalization", std::fabs(sum - 1.0) <= 1e-12, "mass - 1 = " + sci(sum - 1.0)};
}

CheckResult ks_calibration(std::uint64_t seed) {
  RngStream rng(seed, 2);
  std::vector<double> xs(5000);
  for (auto& v : xs) v = rng.uniform();
  const KsReport r = ks_one_sample(xs, [](double u) { return std::clamp(u, 0.0, 1.0); });
  return {"KS calibration (uniform)", r.scaled < 1.63, "scaled " + sci(r.scaled)};
}

CheckResult expression_parser() {
  const Expression e = Expression::parse("piecewise(x>=0 ? sqrt(x^2+1) : -2*x) + sin(pi/2)");
  const bool ok = std::fabs(e(3.0) - (std::sqrt(10.0) + 1.0)) < 1e-14 &&
                  std::fabs(e(-1.5) - 4.0) < 1e-14;
  return {"expression parser", ok, ok ? "match" : "mismatch"};
}

}  // namespace

std::vector<CheckResult> validation_suite(std::uint64_t seed) {
  std::vector<std::function<CheckResult()>> checks{
      philox_vector,
      quadrature_catalogue,
      density_normalization,
      chapman_kolmogorov,
      [seed] { return bridge_envelope(seed); },
      model_audits,
      hitting_transform,
      speed_kernel,
      joint_law,
      [seed] { return histogram_mass(seed); },
      [seed] { return ks_calibration(seed); },
      expression_parser,
  };
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace skewsim::cli
