#include "skewsim/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be finite");
  }
}

// Laplace continued fraction for the Mills ratio N^c(z)/phi(z),
//   R(z) = 1/(z + 1/(z + 2/(z + 3/(z + ...)))),
// evaluated with the modified Lentz algorithm. Converges quickly for z >= 6.
double mills_ratio_cf(double z) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double f = z;
  double c = z;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = static_cast<double>(k);
    d = z + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return 1.0 / f;
}

constexpr double kMillsSwitch = 6.0;

}  // namespace

double nc(double x) {
  require_finite(x, "nc");
  return 0.5 * std::erfc(x / kSqrt2);
}

double log_nc(double x) {
  require_finite(x, "log_nc");
  if (x < 0.0) {
    return std::log1p(-0.5 * std::erfc(-x / kSqrt2));
  }
  if (x <= kMillsSwitch) {
    return std::log(0.5 * std::erfc(x / kSqrt2));
  }
  return std::log(mills_ratio_cf(x)) - 0.5 * x * x - kLogSqrt2Pi;
}

double mills(double z) {
  require_finite(z, "mills");
  if (z <= kMillsSwitch) {
    return std::exp(0.5 * z * z) * 0.5 * std::erfc(z / kSqrt2);
  }
  return mills_ratio_cf(z) / kSqrt2Pi;
}

double log_mills(double z) {
  require_finite(z, "log_mills");
  if (z < 0.0) {
    return 0.5 * z * z + log_nc(z);
  }
  return std::log(mills(z));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0,1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852854561 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
              0.24178072517745061177) * r + 1.27045825245236838258) * r +
            3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734) /
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
              0.0151986665636164571966) * r + 0.14810397642748007459) * r +
            0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              0.0012426609473880784386) * r + 0.026532189526576123093) * r +
            0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772) /
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
              1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
            0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -x : x;
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

}  // namespace skewsim
