#include "skewsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "skewsim/errors.hpp"

namespace skewsim {

namespace {

constexpr double kCdfSlack = 1e-9;

KsReport finish(double d, double n_eff) {
  KsReport r;
  r.statistic = d;
  r.n_effective = n_eff;
  r.scaled = d * std::sqrt(n_eff);
  r.has_verdict = n_eff >= kKsMinEffective;
  r.rejected_at_1pct = r.scaled >= kKsCritical1pct;
  r.rejected_at_5pct = r.scaled >= kKsCritical5pct;
  return r;
}

void require_nonempty(const std::vector<double>& v, const char* who) {
  if (v.empty()) throw DomainError(std::string(who) + ": empty sample");
}

}  // namespace

KsReport ks_one_sample_sorted(const std::vector<double>& sorted,
                              const std::vector<double>& cdf_values) {
  require_nonempty(sorted, "ks_one_sample");
  if (sorted.size() != cdf_values.size()) throw DomainError("ks_one_sample: size mismatch");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  double prev = -1.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf_values[i];
    if (f < prev - kCdfSlack || std::isnan(f)) {
      throw DomainError("ks_one_sample: cdf is not monotone along the sample");
    }
    prev = std::max(prev, f);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return finish(std::min(d, 1.0), n);
}

KsReport ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
  require_nonempty(samples, "ks_one_sample");
  std::sort(samples.begin(), samples.end());
  std::vector<double> f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) f[i] = cdf(samples[i]);
  return ks_one_sample_sorted(samples, f);
}

KsReport ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  require_nonempty(xs, "ks_two_sample");
  require_nonempty(ys, "ks_two_sample");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return finish(d, n * m / (n + m));
}

Histogram histogram(const std::vector<double>& samples, int bins, double lo, double hi) {
  require_nonempty(samples, "histogram");
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");
  if (!(hi > lo)) throw DomainError("histogram: empty range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.total = static_cast<std::int64_t>(samples.size());
  const double w = (hi - lo) / bins;
  for (double x : samples) {
    if (!(x >= lo) || !(x <= hi)) continue;
    auto k = static_cast<std::int64_t>((x - lo) / w);
    k = std::clamp<std::int64_t>(k, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(k)];
    ++h.in_range;
  }
  h.density.assign(h.counts.size(), 0.0);
  if (h.in_range > 0) {
    const double scale = 1.0 / (static_cast<double>(h.in_range) * w);
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      h.density[k] = static_cast<double>(h.counts[k]) * scale;
    }
  }
  return h;
}

double quantile(std::vector<double> samples, double q) {
  require_nonempty(samples, "quantile");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile: q must be in [0,1]");
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= samples.size()) return samples.back();
  const double frac = pos - static_cast<double>(k);
  return samples[k] + frac * (samples[k + 1] - samples[k]);
}

Histogram histogram_auto(const std::vector<double>& samples, int bins) {
  require_nonempty(samples, "histogram");
  double lo = quantile(samples, 0.001);
  double hi = quantile(samples, 0.999);
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return histogram(samples, bins, lo, hi);
}

MeanCi mean_ci(const std::vector<double>& samples) {
  require_nonempty(samples, "mean_ci");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  MeanCi r;
  r.mean = mean;
  r.half_width = samples.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return r;
}

ChiSquareReport chi_square(const std::vector<double>& samples,
                           const std::function<double(double)>& cdf, int bins) {
  require_nonempty(samples, "chi_square");
  if (bins < 3) throw DomainError("chi_square: bins must be >= 3");
  const double lo = quantile(samples, 0.001);
  const double hi = quantile(samples, 0.999);
  if (!(hi > lo)) throw DomainError("chi_square: degenerate sample");
  const int inner = bins - 2;
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(inner) + 1);
  for (int k = 0; k <= inner; ++k) edges.push_back(lo + (hi - lo) * k / inner);
  std::vector<double> observed(static_cast<std::size_t>(bins), 0.0);
  for (double x : samples) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    observed[static_cast<std::size_t>(it - edges.begin())] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  std::vector<double> f;
  f.reserve(edges.size());
  for (double e : edges) f.push_back(cdf(e));
  ChiSquareReport r;
  double prev = 0.0;
  for (int k = 0; k < bins; ++k) {
    const double next = k < bins - 1 ? f[static_cast<std::size_t>(k)] : 1.0;
    const double expected = n * (next - prev);
    prev = next;
    if (expected <= 0.0) continue;
    const double diff = observed[static_cast<std::size_t>(k)] - expected;
    r.statistic += diff * diff / expected;
    ++r.dof;
  }
  r.dof -= 1;
  if (r.dof < 1) throw DomainError("chi_square: too few populated cells");
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  r.rejected_at_1pct = r.p_value < 0.01;
  return r;
}

}  // namespace skewsim
