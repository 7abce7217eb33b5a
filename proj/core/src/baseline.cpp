#include "skewsim/baseline.hpp"

#include <chrono>
#include <cmath>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

constexpr double kMaxSteps = 1e8;

void check_beta(double beta) {
  if (!(std::fabs(beta) < 1.0)) throw DomainError("g_transform: |beta| must be < 1");
}

}  // namespace

double g_transform(double x, double beta) {
  check_beta(beta);
  return x >= 0.0 ? (1.0 - beta) * x : (1.0 + beta) * x;
}

double g_inverse(double y, double beta) {
  check_beta(beta);
  return y >= 0.0 ? y / (1.0 - beta) : y / (1.0 + beta);
}

EulerSde euler_sde(const DriftModel& model) {
  EulerSde sde;
  sde.beta = model.params.beta;
  sde.sigma = [](double) { return 1.0; };
  sde.drift = model.bbar;
  return sde;
}

EulerSde euler_sde(const DivergenceCoefficient& coeff, double beta_x) {
  EulerSde sde;
  sde.beta = beta_x;
  sde.sigma = [coeff](double x) { return std::sqrt(coeff.a(x)); };
  sde.drift = [coeff](double x) { return 0.5 * coeff.a_prime(x); };
  return sde;
}

double euler_endpoint(const EulerConfig& cfg, RngStream& rng) {
  if (!(cfg.dt > 0.0) || !(cfg.T > 0.0)) throw DomainError("euler: dt and T must be > 0");
  const double steps_real = std::ceil(cfg.T / cfg.dt - 1e-9);
  if (steps_real > kMaxSteps) throw DomainError("euler: T/dt exceeds the 1e8 step budget");
  check_beta(cfg.sde.beta);
  const auto steps = static_cast<std::int64_t>(steps_real);
  const double beta = cfg.sde.beta;
  const double up = 1.0 - beta;
  const double down = 1.0 + beta;
  const double at_zero = 1.0 - beta * beta;
  double y = g_transform(cfg.x0, beta);
  double t = 0.0;
  for (std::int64_t k = 0; k < steps; ++k) {
    const double h = std::min(cfg.dt, cfg.T - t);
    double x;
    double slope;
    if (y > 0.0) {
      x = y / up;
      slope = up;
    } else if (y < 0.0) {
      x = y / down;
      slope = down;
    } else {
      x = 0.0;
      slope = at_zero;
    }
    y += slope * (cfg.sde.sigma(x) * std::sqrt(h) * rng.normal() + cfg.sde.drift(x) * h);
    t += h;
  }
  return g_inverse(y, beta);
}

EulerBatch run_euler_batch(const EulerConfig& cfg, std::int64_t n, unsigned workers,
                           std::uint64_t seed) {
  if (n < 1) throw DomainError("run_euler_batch: n must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  EulerBatch out;
  out.endpoints.assign(static_cast<std::size_t>(n), 0.0);
  parallel_for_index(n, workers, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    out.endpoints[static_cast<std::size_t>(i)] = euler_endpoint(cfg, rng);
  });
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace skewsim
