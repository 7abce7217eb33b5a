#pragma once

// Gaussian tail functions used by every density in the library.

namespace skewsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// Upper tail of the standard normal, N^c(x) = P(N(0,1) > x).
double nc(double x);

/// log N^c(x); finite for all finite x.
double log_nc(double x);

/// Mills ratio kernel e^{z^2/2} N^c(z).
///
/// Direct product for z <= 6, continued fraction above, so large
/// positive z never overflows. For z below about -37.6 the true value
/// exceeds the double range and +inf is returned; use log_mills there.
double mills(double z);

/// log of mills(z); finite for all finite z.
double log_mills(double z);

/// Standard normal quantile (Wichura AS241), p in (0,1).
double normal_quantile(double p);

/// log(e^a + e^b) without overflow; handles -inf operands.
double log_add_exp(double a, double b);

}  // namespace skewsim
