#pragma once

namespace skewsim {

/// Parameters (beta, mu) of the skew Brownian motion with constant drift.
struct SkewParams {
  double beta = 0.0;
  double mu = 0.0;

  SkewParams() = default;
  /// Throws DomainError unless |beta| < 1 and both values are finite.
  SkewParams(double beta, double mu);

  /// max((1+beta)/2, (1-beta)/2).
  double alpha_bar() const noexcept;
  SkewParams mirrored() const noexcept;
};

/// Joint density of (B^beta_t, L^0_t) for the driftless skew motion.
struct JointDensityValue {
  double continuous_part = 0.0;  ///< density in (y, l), l > 0
  double atom_at_zero = 0.0;     ///< density in y on {L^0_t = 0}
};

/// Brownian-with-drift transition density (2 pi t)^{-1/2} exp(-(y-x-mu t)^2 / 2t).
double gauss_kernel(double t, double x, double y, double mu);
double log_gauss_kernel(double t, double x, double y, double mu);

/// gamma(t,z) = 1 - beta mu sqrt(2 pi t) mills((beta mu t + z)/sqrt(t)), z >= 0.
double gamma_factor(double t, double z, const SkewParams& p);
double log_gamma_factor(double t, double z, const SkewParams& p);

/// log of p^{beta,mu}(t,x,y) / p^{0,mu}(t,x,y). Every drift exponential
/// cancels in this ratio, so it stays finite where the density itself
/// underflows.
double log_density_ratio(double t, double x, double y, const SkewParams& p);
double density_ratio(double t, double x, double y, const SkewParams& p);

/// Transition density p^{beta,mu}(t,x,y). y = 0 and x = 0 take the ">= 0" branch.
double skew_density(double t, double x, double y, const SkewParams& p);
double log_skew_density(double t, double x, double y, const SkewParams& p);

/// skew_density(t, -x, -y, (-beta, -mu)); equals skew_density(t,x,y,p).
double mirror(double t, double x, double y, const SkewParams& p);

/// Joint law of position and symmetric local time at 0 (mu = 0).
/// x < 0 is handled through the mirror map.
JointDensityValue joint_position_local_time(double t, double x, double y, double l,
                                            double beta);

/// Brownian-bridge marginal q^{0,0}(t,T,a,b,y).
double brownian_bridge_density(double t, double T, double a, double b, double y);
double log_brownian_bridge_density(double t, double T, double a, double b, double y);

/// q^{beta,mu}(t,T,a,b,y) = p(t,a,y) p(T-t,y,b) / p(T,a,b).
double bridge_density(double t, double T, double a, double b, double y, const SkewParams& p);
double log_bridge_density(double t, double T, double a, double b, double y,
                          const SkewParams& p);

/// K with q^{beta,mu} <= K q^{0,0} for every y:
/// 4 abar^2 gamma(t,|a|) gamma(T-t,|b|) / r(T,a,b), the gammas dropped when beta mu >= 0.
double bridge_bound(double t, double T, double a, double b, const SkewParams& p);
double log_bridge_bound(double t, double T, double a, double b, const SkewParams& p);

/// Acceptance probability r(t,a,y) r(T-t,y,b) / (4 abar^2 gamma gamma) of the
/// bridge rejection step; equals q / (K q^{0,0}).
double bridge_acceptance(double t, double T, double a, double b, double y,
                         const SkewParams& p);

/// Distribution function of p^{beta,mu}(t,x,.) by quadrature.
double skew_cdf(double t, double x, double y, const SkewParams& p, double tol = 1e-10);

}  // namespace skewsim
