#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace skewsim {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct QuadratureOptions {
  double tol = 1e-10;
  /// Extra interior split points (0 is always inserted when inside the range).
  std::vector<double> breakpoints;
  /// Bisection depth per piece; bounds the evaluation budget.
  unsigned max_depth = 18;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lower, upper].
///
/// Either limit may be infinite. Semi-infinite pieces are mapped onto
/// [0,1) with u = L + s/(1-s). The range is always split at 0 because
/// every density in this library has a kink there.
///
/// Throws AccuracyError (carrying the partial result) if some piece does
/// not reach max(tol * |piece|_1, tiny) within the bisection budget.
QuadratureResult integrate(const std::function<double(double)>& f, double lower,
                           double upper, const QuadratureOptions& options = {});

/// Shorthand with only a tolerance and optional breakpoints.
QuadratureResult integrate(const std::function<double(double)>& f, double lower,
                           double upper, double tol,
                           std::initializer_list<double> breakpoints = {});

/// Values of the integral of f from -inf up to each of the sorted points,
/// accumulated piece by piece (one quadrature per gap). Used to evaluate a
/// distribution function at every point of a sorted sample.
std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        const std::vector<double>& sorted_points,
                                        const QuadratureOptions& options = {});

}  // namespace skewsim
