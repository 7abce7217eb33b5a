#include "skewsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "skewsim/bridge.hpp"
#include "skewsim/errors.hpp"
#include "skewsim/exactsim.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/special.hpp"

namespace skewsim {

namespace {

void check_beta(double beta) {
  if (!(std::fabs(beta) < 1.0)) throw DomainError("analytics: |beta| must be < 1");
}

// sinh(p)/sinh(q) for 0 <= p <= q, q > 0.
double sinh_ratio(double p, double q) {
  if (p == 0.0) return 0.0;
  return std::exp(p - q) * std::expm1(-2.0 * p) / std::expm1(-2.0 * q);
}

}  // namespace

double scale(double x, double beta) {
  check_beta(beta);
  return x >= 0.0 ? 2.0 * x / (1.0 + beta) : 2.0 * x / (1.0 - beta);
}

double scale_slope(double x, double beta) {
  check_beta(beta);
  return x >= 0.0 ? 2.0 / (1.0 + beta) : 2.0 / (1.0 - beta);
}

double speed_slope(double x, double beta) {
  check_beta(beta);
  return x >= 0.0 ? 1.0 + beta : 1.0 - beta;
}

double ell(double t, double x, double y, double beta) {
  if (!(t > 0.0)) throw DomainError("ell: t must be > 0");
  check_beta(beta);
  const double norm = 1.0 / (kSqrt2Pi * std::sqrt(t));
  const double cross = std::exp(-(x + y) * (x + y) / (2.0 * t));
  if ((x >= 0.0) != (y >= 0.0)) return norm * std::exp(-(x - y) * (x - y) / (2.0 * t));
  const double w = x >= 0.0 ? 1.0 + beta : 1.0 - beta;
  // e^{-(y-x)^2/2t} - e^{-(y+x)^2/2t} = e^{-(y-x)^2/2t} (1 - e^{-2xy/t})
  const double diff = -std::expm1(-2.0 * x * y / t) * std::exp(-(y - x) * (y - x) / (2.0 * t));
  return norm * (diff / w + cross);
}

double u_lambda(double x, double z, double lambda, double beta) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("u_lambda: lambda must be > 0");
  check_beta(beta);
  if (x == z) return 1.0;
  const double k = std::sqrt(2.0 * lambda);
  if (z >= 0.0 && x >= z) return std::exp(-k * (x - z));
  if (z <= 0.0 && x <= z) return std::exp(k * (x - z));
  if (z > 0.0) {
    // x < z; (1+beta)/(2cosh(kz) - (1-beta)e^{-kz}) = (1+beta)e^{-kz}/(1+beta e^{-2kz})
    const double d = (1.0 + beta) * std::exp(-k * z) / (1.0 + beta * std::exp(-2.0 * k * z));
    if (x <= 0.0) return std::exp(k * x) * d;
    return sinh_ratio(k * (z - x), k * z) * d + sinh_ratio(k * x, k * z);
  }
  // z < 0 < ... x > z
  const double zeta = -z;
  const double d = (1.0 - beta) * std::exp(-k * zeta) / (1.0 - beta * std::exp(-2.0 * k * zeta));
  if (x >= 0.0) return std::exp(-k * x) * d;
  return sinh_ratio(k * (x - z), k * zeta) * d + sinh_ratio(-k * x, k * zeta);
}

double u_lambda(double x, double z, double lambda, const SkewParams& p) {
  if (p.mu != 0.0) throw DomainError("u_lambda: closed form only for mu = 0");
  return u_lambda(x, z, lambda, p.beta);
}

double u_lambda_ode_residual(double x, double z, double lambda, double beta, double h) {
  const double u = u_lambda(x, z, lambda, beta);
  const double second =
      (u_lambda(x + h, z, lambda, beta) - 2.0 * u + u_lambda(x - h, z, lambda, beta)) / (h * h);
  return std::fabs(0.5 * second - lambda * u) / std::fabs(u);
}

double u_lambda_flux_residual(double z, double lambda, double beta, double h) {
  auto u = [&](double x) { return u_lambda(x, z, lambda, beta); };
  const double u0 = u(0.0);
  const double right = (-3.0 * u0 + 4.0 * u(h) - u(2.0 * h)) / (2.0 * h);
  const double left = (3.0 * u0 - 4.0 * u(-h) + u(-2.0 * h)) / (2.0 * h);
  const double lhs = (1.0 + beta) * right;
  const double rhs = (1.0 - beta) * left;
  return std::fabs(lhs - rhs) / std::max(std::fabs(lhs), 1e-300);
}

double max_decomposition_density(double a, double b, double T, double lambda, double z,
                                 double beta) {
  if (!(z >= std::max(a, b))) throw DomainError("max_decomposition_density: z < max(a,b)");
  if (!(T > 0.0)) throw DomainError("max_decomposition_density: T must be > 0");
  return u_lambda(a, z, lambda, beta) * u_lambda(z, b, lambda, beta) * scale_slope(z, beta) /
         ell(T, a, b, beta);
}

double max_decomposition_mass(double a, double b, double T, double lambda, double beta) {
  const double lo = std::max(a, b);
  auto f = [&](double z) { return max_decomposition_density(a, b, T, lambda, z, beta); };
  return integrate(f, lo, std::numeric_limits<double>::infinity(), 1e-10).value;
}

RhoEstimate monte_carlo_laplace_rho(double a, double b, double T, double lambda, double beta,
                                    std::int64_t paths, int grid, std::uint64_t seed,
                                    unsigned workers) {
  if (paths < 1 || grid < 2) throw DomainError("monte_carlo_laplace_rho: bad sizes");
  const SkewParams p(beta, 0.0);
  const double dt = T / grid;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(grid - 1));
  for (int i = 1; i < grid; ++i) times.push_back(dt * i);
  std::vector<double> weights(static_cast<std::size_t>(paths));
  parallel_for_index(paths, workers, [&](std::int64_t k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    const std::vector<double> v = sample_skew_bridge_skeleton(times, T, a, b, p, rng);
    double best = a;
    double rho = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > best) {
        best = v[i];
        rho = times[i];
      }
    }
    if (b > best) rho = T;
    weights[static_cast<std::size_t>(k)] = std::exp(-lambda * rho);
  });
  RhoEstimate est;
  est.paths = paths;
  est.grid_spacing = dt;
  double sum = 0.0;
  double sum2 = 0.0;
  for (double w : weights) {
    sum += w;
    sum2 += w * w;
  }
  const double n = static_cast<double>(paths);
  est.mean = sum / n;
  const double var = std::max(sum2 / n - est.mean * est.mean, 0.0);
  est.std_error = std::sqrt(var / n);
  return est;
}

}  // namespace skewsim
