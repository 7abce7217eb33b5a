#include "skewsim/skewlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewsim/errors.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/special.hpp"

namespace skewsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be > 0");
}

void require_bridge_times(double t, double T, const char* who) {
  if (!(T > 0.0) || !(t > 0.0) || !(t < T)) {
    throw DomainError(std::string(who) + ": requires 0 < t < T");
  }
}

// log Gamma(t, s) with s = |x| + |y| >= 0.
double log_bracket(double t, double s, double bm) {
  if (bm == 0.0) return 0.0;
  const double sqrt_t = std::sqrt(t);
  const double w = (s + t * bm) / sqrt_t;
  if (bm < 0.0) {
    // 1 + |bm| sqrt(2 pi t) mills(w), mills may exceed the double range.
    const double log_term = std::log(-bm * kSqrt2Pi * sqrt_t) + log_mills(w);
    return log_add_exp(0.0, log_term);
  }
  return std::log1p(-bm * kSqrt2Pi * sqrt_t * mills(w));
}

// log r for x >= 0. `upper` says whether y lies on the same side as x;
// y == 0 is upper for the original orientation and lower once mirrored.
double log_ratio_right(double t, double x, double y, double beta, double mu, bool upper) {
  const double lg = log_bracket(t, x + std::fabs(y), beta * mu);
  if (upper) {
    const double k = 2.0 * x * y / t;
    const double first = k > 0.0 ? std::log(-std::expm1(-k)) : kNegInf;
    return log_add_exp(first, std::log1p(beta) - k + lg);
  }
  return std::log1p(-beta) + lg;
}

}  // namespace

SkewParams::SkewParams(double beta_, double mu_) : beta(beta_), mu(mu_) {
  if (!std::isfinite(beta_) || !std::isfinite(mu_)) {
    throw DomainError("SkewParams: non-finite value");
  }
  if (!(std::fabs(beta_) < 1.0)) throw DomainError("SkewParams: |beta| must be < 1");
}

double SkewParams::alpha_bar() const noexcept {
  return std::max((1.0 + beta) / 2.0, (1.0 - beta) / 2.0);
}

SkewParams SkewParams::mirrored() const noexcept {
  SkewParams m;
  m.beta = -beta;
  m.mu = -mu;
  return m;
}

double log_gauss_kernel(double t, double x, double y, double mu) {
  require_time(t, "gauss_kernel");
  const double d = y - x - mu * t;
  return -d * d / (2.0 * t) - 0.5 * std::log(t) - kLogSqrt2Pi;
}

double gauss_kernel(double t, double x, double y, double mu) {
  return std::exp(log_gauss_kernel(t, x, y, mu));
}

double log_gamma_factor(double t, double z, const SkewParams& p) {
  require_time(t, "gamma_factor");
  if (!(z >= 0.0)) throw DomainError("gamma_factor: z must be >= 0");
  return log_bracket(t, z, p.beta * p.mu);
}

double gamma_factor(double t, double z, const SkewParams& p) {
  return std::exp(log_gamma_factor(t, z, p));
}

double log_density_ratio(double t, double x, double y, const SkewParams& p) {
  require_time(t, "skew_density");
  if (x >= 0.0) return log_ratio_right(t, x, y, p.beta, p.mu, y >= 0.0);
  return log_ratio_right(t, -x, -y, -p.beta, -p.mu, y < 0.0);
}

double density_ratio(double t, double x, double y, const SkewParams& p) {
  return std::exp(log_density_ratio(t, x, y, p));
}

double log_skew_density(double t, double x, double y, const SkewParams& p) {
  return log_gauss_kernel(t, x, y, p.mu) + log_density_ratio(t, x, y, p);
}

double skew_density(double t, double x, double y, const SkewParams& p) {
  return std::exp(log_skew_density(t, x, y, p));
}

double mirror(double t, double x, double y, const SkewParams& p) {
  return skew_density(t, -x, -y, p.mirrored());
}

JointDensityValue joint_position_local_time(double t, double x, double y, double l,
                                            double beta) {
  require_time(t, "joint_position_local_time");
  if (!(l >= 0.0)) throw DomainError("joint_position_local_time: l must be >= 0");
  if (!(std::fabs(beta) < 1.0)) throw DomainError("joint_position_local_time: |beta| must be < 1");
  // the "y >= 0" case in the frame where x >= 0; y == 0 keeps its own sign convention
  bool upper = y >= 0.0;
  if (x < 0.0) {
    x = -x;
    y = -y;
    beta = -beta;
    upper = !upper;
  }
  JointDensityValue v;
  const double c = l + std::fabs(y) + x;
  const double weight = upper ? 1.0 + beta : 1.0 - beta;
  if (l > 0.0) {
    v.continuous_part = weight * c * std::exp(-c * c / (2.0 * t)) / (kSqrt2Pi * t * std::sqrt(t));
  }
  if (upper) {
    const double e1 = -(y - x) * (y - x) / (2.0 * t);
    // e^{e1} - e^{e1 - 2xy/t}, kept accurate for small xy
    v.atom_at_zero = -std::expm1(-2.0 * x * y / t) * std::exp(e1) / (kSqrt2Pi * std::sqrt(t));
  }
  return v;
}

double log_brownian_bridge_density(double t, double T, double a, double b, double y) {
  require_bridge_times(t, T, "brownian_bridge_density");
  const double mean = a + (t / T) * (b - a);
  const double var = t * (T - t) / T;
  const double d = y - mean;
  return -d * d / (2.0 * var) - 0.5 * std::log(var) - kLogSqrt2Pi;
}

double brownian_bridge_density(double t, double T, double a, double b, double y) {
  return std::exp(log_brownian_bridge_density(t, T, a, b, y));
}

double log_bridge_density(double t, double T, double a, double b, double y,
                          const SkewParams& p) {
  require_bridge_times(t, T, "bridge_density");
  // q^{0,mu} = q^{0,0}, so only the density ratios remain.
  return log_brownian_bridge_density(t, T, a, b, y) + log_density_ratio(t, a, y, p) +
         log_density_ratio(T - t, y, b, p) - log_density_ratio(T, a, b, p);
}

double bridge_density(double t, double T, double a, double b, double y, const SkewParams& p) {
  return std::exp(log_bridge_density(t, T, a, b, y, p));
}

namespace {

double log_bridge_envelope(double t, double T, double a, double b, const SkewParams& p) {
  const double ab = p.alpha_bar();
  double v = 2.0 * std::log(2.0 * ab);
  if (p.beta * p.mu < 0.0) {
    v += log_gamma_factor(t, std::fabs(a), p) + log_gamma_factor(T - t, std::fabs(b), p);
  }
  return v;
}

}  // namespace

double log_bridge_bound(double t, double T, double a, double b, const SkewParams& p) {
  require_bridge_times(t, T, "bridge_bound");
  return log_bridge_envelope(t, T, a, b, p) - log_density_ratio(T, a, b, p);
}

double bridge_bound(double t, double T, double a, double b, const SkewParams& p) {
  return std::exp(log_bridge_bound(t, T, a, b, p));
}

double bridge_acceptance(double t, double T, double a, double b, double y,
                         const SkewParams& p) {
  require_bridge_times(t, T, "bridge_acceptance");
  return std::exp(log_density_ratio(t, a, y, p) + log_density_ratio(T - t, y, b, p) -
                  log_bridge_envelope(t, T, a, b, p));
}

double skew_cdf(double t, double x, double y, const SkewParams& p, double tol) {
  require_time(t, "skew_cdf");
  if (y == -std::numeric_limits<double>::infinity()) return 0.0;
  const double peak = x + p.mu * t;
  const double spread = 8.0 * std::sqrt(t);
  QuadratureOptions opt;
  opt.tol = tol;
  opt.breakpoints = {peak - spread, peak, peak + spread, x, -x};
  auto f = [&](double u) { return skew_density(t, x, u, p); };
  const double v = integrate(f, -std::numeric_limits<double>::infinity(), y, opt).value;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace skewsim
