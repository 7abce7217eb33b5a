#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace skewsim {

inline constexpr double kKsCritical1pct = 1.63;
inline constexpr double kKsCritical5pct = 1.36;
/// Below this effective size no verdict is given (asymptotic critical values).
inline constexpr double kKsMinEffective = 1000.0;

struct KsReport {
  double statistic = 0.0;
  double n_effective = 0.0;
  double scaled = 0.0;  ///< statistic * sqrt(n_effective)
  bool has_verdict = false;
  bool rejected_at_1pct = false;
  bool rejected_at_5pct = false;
};

/// One-sample KS against a continuous cdf. Throws DomainError if the cdf
/// decreases (by more than 1e-9) along the sorted sample.
KsReport ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Same with the cdf already evaluated at the sorted sample.
KsReport ks_one_sample_sorted(const std::vector<double>& sorted,
                              const std::vector<double>& cdf_values);

/// Two-sample KS; n_effective = n m / (n + m).
KsReport ks_two_sample(std::vector<double> xs, std::vector<double> ys);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::int64_t> counts;
  std::vector<double> density;  ///< normalized by the in-range count
  std::int64_t in_range = 0;
  std::int64_t total = 0;

  double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * width(); }
};

/// Fixed-range histogram on [lo, hi]; hi itself lands in the last bin.
Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi);
/// Range [q_0.001, q_0.999] of the sample.
Histogram histogram_auto(const std::vector<double>& samples, int bins = 200);

/// Linear-interpolation sample quantile (type 7).
double quantile(std::vector<double> samples, double q);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  ///< 1.96 standard errors
};
MeanCi mean_ci(const std::vector<double>& samples);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool rejected_at_1pct = false;
};

/// Pearson chi-square against a cdf on `bins` cells: bins-2 equal-width cells
/// spanning the sample's [q_0.001, q_0.999] plus the two tails.
ChiSquareReport chi_square(const std::vector<double>& samples,
                           const std::function<double(double)>& cdf, int bins = 20);

}  // namespace skewsim
