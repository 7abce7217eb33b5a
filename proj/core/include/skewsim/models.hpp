#pragma once

#include <map>
#include <optional>
#include <string>

#include "skewsim/exactsim.hpp"

namespace skewsim {

/// mu = (1+beta)/(2 beta) bbar(0+) - (1-beta)/(2 beta) bbar(0-); beta != 0.
double mu_from_drift(double bbar_plus0, double bbar_minus0, double beta);

/// ((b(0+)+b(0-))/2) beta + (b(0+)-b(0-))/2 with b = bbar - mu; zero when mu
/// is chosen by mu_from_drift.
double cancellation_coefficient(double bbar_plus0, double bbar_minus0, double beta, double mu);

/// phi = (b^2 + b' + 2 mu b)/2. At exactly 0 the supplied functions decide
/// the branch; the built-in models evaluate the right limit there.
RealFn phi_from_b(RealFn b, RealFn bprime, double mu);

struct AuditOptions {
  double lo = -25.0;
  double hi = 25.0;
  int points = 10000;
};

/// Checks phi_tilde in [0, phi_bound] on a grid, B(0) = 0 and the
/// local-time cancellation. Throws DomainError on failure.
void audit_model(const DriftModel& model, const AuditOptions& options = {});

/// dX = dW - (pi/2) cos(pi X / 5) dt + 0.6 dL^0(X).
DriftModel example1_model();

/// Constant drift bbar = mu; the exact algorithm then samples p^{beta,mu}
/// itself (no Poisson points). Proposals are centered at x0 + mu T.
DriftModel constant_drift_model(double beta, double mu);

/// Divergence-form coefficient a with a possible jump at 0.
struct DivergenceCoefficient {
  RealFn a_plus;   ///< a on x >= 0
  RealFn a_minus;  ///< a on x < 0
  RealFn a_plus_prime;
  RealFn a_minus_prime;
  double lambda = 0.0;  ///< lower ellipticity bound
  double Lambda = 0.0;  ///< upper ellipticity bound

  double a(double x) const { return x >= 0.0 ? a_plus(x) : a_minus(x); }
  double a_prime(double x) const { return x >= 0.0 ? a_plus_prime(x) : a_minus_prime(x); }
};

/// Y = Phi(X), Phi(x) = int_0^x dz / sqrt(a(z)).
struct LampertiMap {
  RealFn phi;
  RealFn phi_inverse;
  double beta = 0.0;
  /// Empty when beta = 0 and the drift jumps at 0 (no admissible mu).
  std::optional<double> mu;
  /// bbar(y) = (1/2)(sqrt a)' o Phi^{-1}(y).
  RealFn drift;
};

/// Generic numeric Lamperti map (quadrature for Phi, bracketed root finding
/// for the inverse). Throws DomainError when a leaves [lambda, Lambda].
LampertiMap lamperti(const DivergenceCoefficient& coeff);

struct Example2 {
  DriftModel model;  ///< on the Y = Phi(X) scale
  DivergenceCoefficient coeff;
  RealFn phi;
  RealFn phi_inverse;
  /// Skewness of the X-scale equation dX = sqrt(a) dW + a'/2 dt + beta_x dL^0.
  double beta_x = 0.0;
};

/// a(x) = (x^2+x+1)/(2x+1)^2 on x >= 0, (3x^2-x+2)/(6x-1)^2 on x < 0.
Example2 example2_model();

/// The coefficient of example2_model with closed-form derivatives.
DivergenceCoefficient example2_coefficient();

/// Model from key = value pairs. Required: beta, bbar, bbar_prime.
/// Optional: B, phi_tilde, phi_bound, proposal_drift, audit_lo, audit_hi.
/// Missing B / phi_tilde / phi_bound are built numerically and the model is
/// marked envelope_proven = false.
DriftModel custom_model(const std::map<std::string, std::string>& entries);

/// Reads a flat key = value file (# comments) and calls custom_model.
DriftModel custom_model_from_file(const std::string& path);

}  // namespace skewsim
