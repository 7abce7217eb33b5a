#include "skewsim/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "skewsim/errors.hpp"
#include "skewsim/expr.hpp"
#include "skewsim/quadrature.hpp"
#include "skewsim/special.hpp"

namespace skewsim {

namespace {

constexpr double kAuditTol = 1e-12;

// log(2 abar gamma(T,|x0|)), gamma dropped when beta mu >= 0.
double log_density_envelope(double T, double x0, const SkewParams& p) {
  double v = std::log(2.0 * p.alpha_bar());
  if (p.beta * p.mu < 0.0) v += log_gamma_factor(T, std::fabs(x0), p);
  return v;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

double mu_from_drift(double bbar_plus0, double bbar_minus0, double beta) {
  if (beta == 0.0) throw DomainError("mu_from_drift: beta = 0 leaves mu undefined");
  return (1.0 + beta) / (2.0 * beta) * bbar_plus0 - (1.0 - beta) / (2.0 * beta) * bbar_minus0;
}

double cancellation_coefficient(double bbar_plus0, double bbar_minus0, double beta, double mu) {
  const double bp = bbar_plus0 - mu;
  const double bm = bbar_minus0 - mu;
  return 0.5 * (bp + bm) * beta + 0.5 * (bp - bm);
}

RealFn phi_from_b(RealFn b, RealFn bprime, double mu) {
  return [b = std::move(b), bprime = std::move(bprime), mu](double z) {
    const double bz = b(z);
    return 0.5 * (bz * bz + bprime(z) + 2.0 * mu * bz);
  };
}

void audit_model(const DriftModel& model, const AuditOptions& options) {
  std::ostringstream msg;
  msg << "model '" << model.name << "': ";
  if (!(model.phi_bound >= 0.0) || !std::isfinite(model.phi_bound)) {
    throw DomainError(msg.str() + "phi_bound must be finite and >= 0");
  }
  const double b0 = model.bigB(0.0);
  if (std::fabs(b0) > kAuditTol) {
    msg << "B(0) = " << b0 << " (expected 0)";
    throw DomainError(msg.str());
  }
  const double c = cancellation_coefficient(model.bbar_plus0, model.bbar_minus0,
                                            model.params.beta, model.params.mu);
  if (std::fabs(c) > kAuditTol) {
    msg << "local-time cancellation coefficient " << c << " is not 0";
    throw DomainError(msg.str());
  }
  const int n = std::max(options.points, 2);
  const double slack = kAuditTol * std::max(1.0, model.phi_bound);
  for (int i = 0; i < n; ++i) {
    const double z = options.lo + (options.hi - options.lo) * i / (n - 1);
    const double v = model.phi_tilde(z);
    if (!(v >= -kAuditTol) || !(v <= model.phi_bound + slack)) {
      msg << "phi_tilde(" << z << ") = " << v << " outside [0, " << model.phi_bound << "]";
      throw DomainError(msg.str());
    }
  }
}

DriftModel example1_model() {
  const double beta = 0.6;
  const double mu = -kPi / 2.0;
  DriftModel m;
  m.name = "example1";
  m.params = SkewParams(beta, mu);
  m.bbar = [](double x) { return -kPi / 2.0 * std::cos(kPi * x / 5.0); };
  m.bbar_plus0 = m.bbar(0.0);
  m.bbar_minus0 = m.bbar(0.0);
  m.bigB = [](double u) { return kPi / 2.0 * u - 2.5 * std::sin(kPi * u / 5.0); };
  const double pi2 = kPi * kPi;
  m.phi_tilde = [pi2](double x) {
    const double c = std::cos(kPi * x / 5.0);
    return pi2 / 8.0 * c * c + pi2 / 20.0 * std::sin(kPi * x / 5.0) + pi2 / 20.0;
  };
  m.phi_bound = 9.0 * pi2 / 20.0;
  m.proposal_drift = 0.0;
  const SkewParams p = m.params;
  // B(y) - B(x0) + mu (y - x0) = (5/2)(sin(pi x0/5) - sin(pi y/5)) <= 5
  m.log_endpoint_envelope = [p](double T, double x0) {
    return log_density_envelope(T, x0, p) + 5.0 - p.mu * p.mu * T / 2.0;
  };
  m.to_output = [](double y) { return y; };
  m.from_output = [](double x) { return x; };
  audit_model(m);
  return m;
}

DriftModel constant_drift_model(double beta, double mu) {
  DriftModel m;
  m.name = "constant";
  m.params = SkewParams(beta, mu);
  m.bbar = [mu](double) { return mu; };
  m.bbar_plus0 = mu;
  m.bbar_minus0 = mu;
  m.bigB = [](double) { return 0.0; };
  m.phi_tilde = [](double) { return 0.0; };
  m.phi_bound = 0.0;
  m.proposal_drift = mu;
  const SkewParams p = m.params;
  m.log_endpoint_envelope = [p](double T, double x0) { return log_density_envelope(T, x0, p); };
  m.to_output = [](double y) { return y; };
  m.from_output = [](double x) { return x; };
  audit_model(m);
  return m;
}

LampertiMap lamperti(const DivergenceCoefficient& coeff) {
  if (!(coeff.lambda > 0.0) || !(coeff.Lambda >= coeff.lambda)) {
    throw DomainError("lamperti: need 0 < lambda <= Lambda");
  }
  for (int i = 0; i <= 2000; ++i) {
    const double x = -50.0 + 0.05 * i;
    const double v = coeff.a(x);
    if (!(v >= coeff.lambda) || !(v <= coeff.Lambda)) {
      std::ostringstream msg;
      msg << "lamperti: a(" << x << ") = " << v << " outside [" << coeff.lambda << ", "
          << coeff.Lambda << "]";
      throw DomainError(msg.str());
    }
  }
  const double ap = coeff.a_plus(0.0);
  const double am = coeff.a_minus(-0.0);
  if (!(am > 0.0) || !(ap > 0.0)) throw DomainError("lamperti: a(0+-) must be positive");
  // a_minus is only defined on x < 0; its value at 0 is the left limit.
  LampertiMap map;
  map.beta = (std::sqrt(ap) - std::sqrt(am)) / (std::sqrt(ap) + std::sqrt(am));

  const DivergenceCoefficient c = coeff;
  auto phi = [c](double x) {
    if (x == 0.0) return 0.0;
    auto f = [&c](double z) { return 1.0 / std::sqrt(c.a(z)); };
    return integrate(f, 0.0, x, 1e-13).value;
  };
  map.phi = phi;
  const double lo_slope = std::sqrt(c.lambda);
  const double hi_slope = std::sqrt(c.Lambda);
  map.phi_inverse = [phi, lo_slope, hi_slope](double y) {
    if (y == 0.0) return 0.0;
    // |y| sqrt(lambda) <= |Phi^{-1}(y)| <= |y| sqrt(Lambda)
    double lo = y > 0.0 ? y * lo_slope : y * hi_slope;
    double hi = y > 0.0 ? y * hi_slope : y * lo_slope;
    auto g = [&](double x) { return phi(x) - y; };
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                               boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return 0.5 * (r.first + r.second);
  };
  const double bp = coeff.a_plus_prime(0.0) / (4.0 * std::sqrt(ap));
  const double bm = coeff.a_minus_prime(-0.0) / (4.0 * std::sqrt(am));
  if (map.beta != 0.0) {
    map.mu = mu_from_drift(bp, bm, map.beta);
  } else if (bp == bm) {
    map.mu = bp;
  }
  auto inv = map.phi_inverse;
  map.drift = [c, inv](double y) {
    const double x = inv(y);
    return c.a_prime(x) / (4.0 * std::sqrt(c.a(x)));
  };
  return map;
}

namespace {

// Closed forms for the example-2 coefficient. v = 2x+1 (x >= 0), w = 1-6x (x < 0).
double sqrt_a_plus(double x) {
  const double v = 2.0 * x + 1.0;
  return std::sqrt(v * v + 3.0) / (2.0 * v);
}
double sqrt_a_minus(double x) {
  const double w = 1.0 - 6.0 * x;
  return std::sqrt(w * w + 23.0) / (std::sqrt(12.0) * w);
}
double dsqrt_a_plus(double x) {
  const double v = 2.0 * x + 1.0;
  return -3.0 / (v * v * std::sqrt(v * v + 3.0));
}
double dsqrt_a_minus(double x) {
  const double w = 1.0 - 6.0 * x;
  return 23.0 * std::sqrt(3.0) / (w * w * std::sqrt(w * w + 23.0));
}
double d2sqrt_a_plus(double x) {
  const double v = 2.0 * x + 1.0;
  const double q = v * v + 3.0;
  return 6.0 * (2.0 / (v * v * v * std::sqrt(q)) + 1.0 / (v * q * std::sqrt(q)));
}
double d2sqrt_a_minus(double x) {
  const double w = 1.0 - 6.0 * x;
  const double q = w * w + 23.0;
  return 6.0 * 23.0 * std::sqrt(3.0) * (2.0 / (w * w * w * std::sqrt(q)) + 1.0 / (w * q * std::sqrt(q)));
}

double ex2_phi(double x) {
  if (x >= 0.0) return 2.0 * std::sqrt(x * x + x + 1.0) - 2.0;
  return -2.0 * std::sqrt(3.0 * x * x - x + 2.0) + 2.0 * kSqrt2;
}

double ex2_phi_inverse(double y) {
  if (y >= 0.0) return (-1.0 + std::sqrt((y + 2.0) * (y + 2.0) - 3.0)) / 2.0;
  const double q = kSqrt2 - y / 2.0;
  return (1.0 - std::sqrt(1.0 - 12.0 * (2.0 - q * q))) / 6.0;
}

}  // namespace

DivergenceCoefficient example2_coefficient() {
  DivergenceCoefficient c;
  c.a_plus = [](double x) {
    const double v = 2.0 * x + 1.0;
    return (x * x + x + 1.0) / (v * v);
  };
  c.a_minus = [](double x) {
    const double w = 6.0 * x - 1.0;
    return (3.0 * x * x - x + 2.0) / (w * w);
  };
  c.a_plus_prime = [](double x) {
    const double v = 2.0 * x + 1.0;
    return -3.0 / (v * v * v);
  };
  c.a_minus_prime = [](double x) {
    const double w = 1.0 - 6.0 * x;
    return 23.0 / (w * w * w);
  };
  c.lambda = 1.0 / 12.0;
  c.Lambda = 2.0;
  return c;
}

Example2 example2_model() {
  Example2 ex;
  ex.coeff = example2_coefficient();
  ex.phi = ex2_phi;
  ex.phi_inverse = ex2_phi_inverse;
  const double beta = (1.0 - kSqrt2) / (1.0 + kSqrt2);
  ex.beta_x = (1.0 - 2.0) / (1.0 + 2.0);

  auto dsqrt = [](double x) { return x >= 0.0 ? dsqrt_a_plus(x) : dsqrt_a_minus(x); };
  auto d2sqrt = [](double x) { return x >= 0.0 ? d2sqrt_a_plus(x) : d2sqrt_a_minus(x); };
  auto sqrt_a = [](double x) { return x >= 0.0 ? sqrt_a_plus(x) : sqrt_a_minus(x); };

  DriftModel& m = ex.model;
  m.name = "example2";
  m.bbar = [dsqrt](double y) { return 0.5 * dsqrt(ex2_phi_inverse(y)); };
  m.bbar_plus0 = 0.5 * dsqrt_a_plus(0.0);
  m.bbar_minus0 = 0.5 * dsqrt_a_minus(0.0);
  const double mu = mu_from_drift(m.bbar_plus0, m.bbar_minus0, beta);
  const double printed_mu = -26.0 / (4.0 * (1.0 - kSqrt2));
  if (std::fabs(mu - printed_mu) > 1e-6 * std::fabs(printed_mu)) {
    throw DomainError("example2: derived mu disagrees with the closed form");
  }
  m.params = SkewParams(beta, mu);
  const double half_log_sqrt2 = 0.25 * std::log(2.0);
  m.bigB = [mu, sqrt_a, half_log_sqrt2](double y) {
    const double v = -mu * y + 0.5 * std::log(sqrt_a(ex2_phi_inverse(y)));
    return y >= 0.0 ? v : v - half_log_sqrt2;
  };
  // phi + mu^2/2 = (bbar^2 + (1/2)(sqrt a)'' sqrt a)/2 at Phi^{-1}(y); infimum 0 at |y| -> inf
  m.phi_tilde = [dsqrt, d2sqrt, sqrt_a](double y) {
    const double x = ex2_phi_inverse(y);
    const double b = 0.5 * dsqrt(x);
    return 0.5 * (b * b + 0.5 * d2sqrt(x) * sqrt_a(x));
  };
  // sup is the left limit at 0: bbar(0-)^2 = 529/32, (1/2)(sqrt a)''(0-) sqrt a(0-) = 140.875/2
  m.phi_bound = (529.0 / 32.0 + 140.875 / 2.0) / 2.0;
  {
    const double left = m.phi_tilde(-1e-13);
    if (std::fabs(left - m.phi_bound) > 1e-6 * m.phi_bound) {
      throw DomainError("example2: phi_tilde(0-) disagrees with the closed-form bound");
    }
  }
  m.proposal_drift = 0.0;
  const SkewParams p = m.params;
  const double log_const = 0.25 * std::log(2.0) + 0.25 * std::log(24.0);
  m.log_endpoint_envelope = [p, log_const](double T, double y0) {
    return log_const + log_density_envelope(T, y0, p) - p.mu * p.mu * T / 2.0;
  };
  m.to_output = ex2_phi_inverse;
  m.from_output = ex2_phi;
  audit_model(m, AuditOptions{-20.0, 20.0, 100000});
  return ex;
}

DriftModel custom_model(const std::map<std::string, std::string>& entries) {
  static const std::set<std::string> known{"beta",  "bbar",           "bbar_prime", "B",
                                           "phi_tilde", "phi_bound", "proposal_drift",
                                           "potential_sup", "audit_lo", "audit_hi", "name"};
  for (const auto& [k, v] : entries) {
    if (!known.count(k)) throw DomainError("custom model: unknown key '" + k + "'");
  }
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    auto it = entries.find(k);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  };
  auto number = [&](const std::string& k) -> std::optional<double> {
    auto s = get(k);
    if (!s) return std::nullopt;
    try {
      return Expression::parse(*s)(0.0);
    } catch (const ExprSyntaxError& e) {
      throw DomainError("custom model: key '" + k + "' expects a number: " + e.what());
    }
  };
  for (const char* req : {"beta", "bbar", "bbar_prime"}) {
    if (!get(req)) throw DomainError(std::string("custom model: missing key '") + req + "'");
  }
  const double beta = *number("beta");
  if (beta == 0.0) throw DomainError("custom model: beta = 0 is not supported");
  const Expression bbar = Expression::parse(*get("bbar"));
  const Expression bbar_prime = Expression::parse(*get("bbar_prime"));
  const double audit_lo = number("audit_lo").value_or(-25.0);
  const double audit_hi = number("audit_hi").value_or(25.0);
  if (!(audit_lo < 0.0 && audit_hi > 0.0)) {
    throw DomainError("custom model: audit range must contain 0");
  }

  DriftModel m;
  m.name = get("name").value_or("custom");
  m.bbar_plus0 = bbar(0.0);
  m.bbar_minus0 = bbar.left_limit(0.0);
  const double mu = mu_from_drift(m.bbar_plus0, m.bbar_minus0, beta);
  m.params = SkewParams(beta, mu);
  m.bbar = bbar;
  m.proposal_drift = number("proposal_drift").value_or(0.0);
  bool proven = true;

  if (auto s = get("B")) {
    m.bigB = Expression::parse(*s);
  } else {
    proven = false;
    m.bigB = [bbar, mu](double u) {
      if (u == 0.0) return 0.0;
      // subtracting mu inside the integrand leaves pure round-off near 0
      return integrate([&](double z) { return bbar(z); }, 0.0, u, 1e-12).value - mu * u;
    };
  }

  const int grid = 100000;
  auto grid_at = [&](int i) { return audit_lo + (audit_hi - audit_lo) * i / (grid - 1); };
  auto phi = phi_from_b([bbar, mu](double z) { return bbar(z) - mu; },
                        [bbar_prime](double z) { return bbar_prime(z); }, mu);
  if (auto s = get("phi_tilde")) {
    m.phi_tilde = Expression::parse(*s);
    if (auto k = number("phi_bound")) {
      m.phi_bound = *k;
    } else {
      proven = false;
      double hi = 0.0;
      for (int i = 0; i < grid; ++i) hi = std::max(hi, m.phi_tilde(grid_at(i)));
      m.phi_bound = 1.05 * hi;
    }
  } else {
    proven = false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < grid; ++i) {
      const double v = phi(grid_at(i));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double margin = 0.05 * std::max(hi - lo, 1e-12);
    const double shift = lo - margin;
    m.phi_tilde = [phi, shift](double z) { return phi(z) - shift; };
    m.phi_bound = hi - shift + margin;
  }

  // sup_y of B(y) + (mu - s) y, needed by the endpoint envelope.
  const double s = m.proposal_drift;
  const auto big_b = m.bigB;
  auto potential = [big_b, mu, s](double y) { return big_b(y) + (mu - s) * y; };
  double sup;
  if (auto v = number("potential_sup")) {
    sup = *v;
  } else {
    proven = false;
    sup = -std::numeric_limits<double>::infinity();
    const int n = 4001;
    for (int i = 0; i < n; ++i) {
      sup = std::max(sup, potential(audit_lo + (audit_hi - audit_lo) * i / (n - 1)));
    }
    sup += std::log(1.05);
  }
  const SkewParams p = m.params;
  m.log_endpoint_envelope = [p, potential, sup, s](double T, double x0) {
    return sup - potential(x0) - (p.mu * p.mu - s * s) * T / 2.0 +
           log_density_envelope(T, x0, p);
  };
  m.to_output = [](double y) { return y; };
  m.from_output = [](double x) { return x; };
  m.envelope_proven = proven;
  audit_model(m, AuditOptions{audit_lo, audit_hi, 10000});
  return m;
}

DriftModel custom_model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("custom model: cannot open '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return custom_model(entries);
}

}  // namespace skewsim
