#include "skewsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

struct Piece {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool exhausted = false;
};

// Boost's recursive driver mixes the [-1,1] error with the scaled tolerance,
// so the subdivision is done here on top of its nodes and weights.
template <class G>
void adaptive(G& g, double a, double b, unsigned depth, double tol, double floor_density,
              Piece& out) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double f0 = g(mid);
  double kron = f0 * wk[0];
  double gauss = f0 * wg[0];
  double l1 = std::fabs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = g(mid + half * x[i]);
    const double fm = g(mid - half * x[i]);
    kron += (fp + fm) * wk[i];
    l1 += (std::fabs(fp) + std::fabs(fm)) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  kron *= half;
  gauss *= half;
  l1 *= half;
  const double err = std::fabs(kron - gauss);
  if (floor_density < 0.0) floor_density = tol * l1 / (b - a);
  const double allowed = std::max({tol * l1, kRoundoff * l1, floor_density * (b - a)});
  if (!std::isfinite(kron) || err <= allowed || depth == 0 || !(mid > a && mid < b)) {
    if (std::isfinite(kron) && err > allowed) out.exhausted = true;
    out.value += kron;
    out.error += err;
    out.l1 += l1;
    return;
  }
  adaptive(g, a, mid, depth - 1, tol, floor_density, out);
  adaptive(g, mid, b, depth - 1, tol, floor_density, out);
}

template <class G>
Piece integrate_finite(G&& g, double a, double b, const QuadratureOptions& opt) {
  Piece piece;
  adaptive(g, a, b, opt.max_depth, opt.tol, -1.0, piece);
  return piece;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lower,
                           double upper, const QuadratureOptions& options) {
  if (!(options.tol > 0.0)) {
    throw DomainError("integrate: tol must be positive");
  }
  if (std::isnan(lower) || std::isnan(upper)) {
    throw DomainError("integrate: NaN limit");
  }
  double sign = 1.0;
  if (upper < lower) {
    std::swap(lower, upper);
    sign = -1.0;
  }
  QuadratureResult result;
  if (lower == upper) return result;

  std::vector<double> cuts{lower};
  std::vector<double> inner = options.breakpoints;
  inner.push_back(0.0);
  std::sort(inner.begin(), inner.end());
  for (double c : inner) {
    if (std::isfinite(c) && c > lower && c < upper && c != cuts.back()) cuts.push_back(c);
  }
  cuts.push_back(upper);

  long evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    return f(x);
  };

  double total = 0.0;
  double total_error = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    Piece piece{};
    if (std::isinf(a) && std::isinf(b)) {
      // Only possible when 0 is not strictly inside, which cannot happen.
      throw DomainError("integrate: unsplit doubly infinite range");
    } else if (std::isinf(b)) {
      auto g = [&](double s) {
        const double one_minus = 1.0 - s;
        return counted(a + s / one_minus) / (one_minus * one_minus);
      };
      piece = integrate_finite(g, 0.0, 1.0, options);
    } else if (std::isinf(a)) {
      auto g = [&](double s) {
        const double one_minus = 1.0 - s;
        return counted(b - s / one_minus) / (one_minus * one_minus);
      };
      piece = integrate_finite(g, 0.0, 1.0, options);
    } else {
      piece = integrate_finite(counted, a, b, options);
    }
    total += piece.value;
    total_error += piece.error;
    // leaves that hit the depth limit are fine while the summed estimate is
    const bool within = piece.error <= options.tol * piece.l1;
    if ((piece.exhausted && !within) || !std::isfinite(piece.value)) converged = false;
  }

  result.value = sign * total;
  result.error_estimate = total_error;
  result.evaluations = evaluations;
  if (!converged) {
    std::ostringstream msg;
    msg << "integrate: no convergence on [" << lower << ", " << upper
        << "] (value " << result.value << ", error estimate " << total_error << ")";
    throw AccuracyError(msg.str(), result.value, total_error);
  }
  return result;
}

QuadratureResult integrate(const std::function<double(double)>& f, double lower,
                           double upper, double tol,
                           std::initializer_list<double> breakpoints) {
  QuadratureOptions opt;
  opt.tol = tol;
  opt.breakpoints.assign(breakpoints.begin(), breakpoints.end());
  return integrate(f, lower, upper, opt);
}

std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        const std::vector<double>& sorted_points,
                                        const QuadratureOptions& options) {
  std::vector<double> out;
  out.reserve(sorted_points.size());
  if (sorted_points.empty()) return out;
  if (!std::is_sorted(sorted_points.begin(), sorted_points.end())) {
    throw DomainError("cumulative_integral: points must be sorted");
  }
  const double inf = std::numeric_limits<double>::infinity();
  double acc = integrate(f, -inf, sorted_points.front(), options).value;
  out.push_back(acc);
  for (std::size_t i = 1; i < sorted_points.size(); ++i) {
    const double a = sorted_points[i - 1];
    const double b = sorted_points[i];
    if (b > a) acc += integrate(f, a, b, options).value;
    out.push_back(acc);
  }
  return out;
}

}  // namespace skewsim
