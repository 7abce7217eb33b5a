#pragma once

#include <cstdint>

#include "skewsim/skewlaw.hpp"

namespace skewsim {

/// Scale function of the skew Brownian motion: 2x/(1+beta) on x >= 0, 2x/(1-beta) below.
double scale(double x, double beta);
double scale_slope(double x, double beta);
/// Speed density: (1+beta) on x >= 0, (1-beta) below.
double speed_slope(double x, double beta);

/// Transition density of the skew Brownian motion with respect to its speed measure.
double ell(double t, double x, double y, double beta);

/// E^x exp(-lambda tau_z) for the driftless skew Brownian motion.
double u_lambda(double x, double z, double lambda, double beta);
/// Same, rejecting p.mu != 0 (only the driftless case has a closed form).
double u_lambda(double x, double z, double lambda, const SkewParams& p);

/// |(1/2) u'' - lambda u| / |u| with a central second difference of step h.
double u_lambda_ode_residual(double x, double z, double lambda, double beta, double h = 1e-4);
/// |(1+beta) u'(0+) - (1-beta) u'(0-)| relative to (1+beta)|u'(0+)|, one-sided
/// second-order differences of step h.
double u_lambda_flux_residual(double z, double lambda, double beta, double h = 1e-4);

/// u(a;z) u(z;b) s'(z) / ell(T,a,b) for z >= max(a,b).
double max_decomposition_density(double a, double b, double T, double lambda, double z,
                                 double beta);

/// Integral of max_decomposition_density over z in [max(a,b), inf).
double max_decomposition_mass(double a, double b, double T, double lambda, double beta);

struct RhoEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double grid_spacing = 0.0;
  std::int64_t paths = 0;
};

/// Monte Carlo E[exp(-lambda rho)] for the skew bridge from (0,a) to (T,b),
/// rho taken as the argmax time on a uniform grid of `grid` intervals.
RhoEstimate monte_carlo_laplace_rho(double a, double b, double T, double lambda, double beta,
                                    std::int64_t paths, int grid, std::uint64_t seed,
                                    unsigned workers = 1);

}  // namespace skewsim
