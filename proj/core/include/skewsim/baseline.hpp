#pragma once

#include <cstdint>
#include <vector>

#include "skewsim/exactsim.hpp"
#include "skewsim/models.hpp"
#include "skewsim/rng.hpp"

namespace skewsim {

/// g(x) = (1-beta) x for x >= 0, (1+beta) x for x < 0; removes the local time.
double g_transform(double x, double beta);
double g_inverse(double y, double beta);

/// dX = sigma(X) dW + drift(X) dt + beta dL^0(X).
struct EulerSde {
  double beta = 0.0;
  RealFn sigma;
  RealFn drift;
};

/// Unit diffusion with the model's drift bbar.
EulerSde euler_sde(const DriftModel& model);
/// Divergence-form equation dX = sqrt(a) dW + a'/2 dt + beta_x dL^0.
EulerSde euler_sde(const DivergenceCoefficient& coeff, double beta_x);

struct EulerConfig {
  double dt = 1e-3;
  double T = 1.0;
  double x0 = 0.0;
  EulerSde sde;
};

/// Euler-Maruyama on Y = g(X), which has no local-time term:
/// Y_{k+1} = Y_k + sigma_Y(Y_k) sqrt(dt) xi_k + mu_Y(Y_k) dt, then X_T = g^{-1}(Y_N).
/// At Y = 0 the derivative of g is the half sum, giving the factor 1 - beta^2.
/// The last step is shortened when T/dt is not an integer.
double euler_endpoint(const EulerConfig& cfg, RngStream& rng);

struct EulerBatch {
  std::vector<double> endpoints;
  double seconds = 0.0;
};

/// n endpoints, sample i on RngStream(seed, i).
EulerBatch run_euler_batch(const EulerConfig& cfg, std::int64_t n, unsigned workers,
                           std::uint64_t seed);

}  // namespace skewsim
