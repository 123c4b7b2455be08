#include "lpnorm/hlp.hpp"

#include <algorithm>
#include <cmath>

#include "lpnorm/factorable.hpp"
#include "lpnorm/parallel.hpp"

namespace lpnorm {

namespace {

constexpr double kThresholdTol = 1e-12;

void require_hlp_p(double p) { require(p > 0.0 && p < 1.0, "HLP routines require 0 < p < 1"); }

}  // namespace

double hlp_constant(double p) {
  require_hlp_p(p);
  return std::pow(p / (1.0 - p), p);
}

LinearTarget thm114_target(double p) {
  require_hlp_p(p);
  return {std::pow(p / (1.0 - p), 1.0 - p), 0.5 * std::pow(1.0 / p - 1.0, p)};
}

MuTrace mu_direct(double p, std::size_t n) {
  require_hlp_p(p);
  require(n >= 1, "mu_direct requires N >= 1");
  const double base = std::pow((1.0 - p) / p, p);
  const auto target = thm114_target(p);
  MuTrace t;
  t.name = "mu_direct";
  t.constraint = MuConstraint::floor;
  t.requested = n;
  t.target_name = "mu_n >= a n + b";

  double mu = base;
  for (std::size_t k = 1; k <= n; ++k) {
    const double log_k = std::log(static_cast<double>(k));
    t.values.push_back(mu);
    t.margins.push_back(mu - std::exp(p * log_k));
    const double goal = target.at(k);
    const double tm = mu - goal;
    t.target_margins.push_back(tm);
    if (tm < -kThresholdTol * goal && !t.first_target_violation) t.first_target_violation = k;
    if (k == n) break;
    // n^{p/(p-1)} mu^{1/(1-p)} - 1 = expm1((log mu - p log n)/(1-p)).
    const double inner = std::expm1((std::log(mu) - p * log_k) / (1.0 - p));
    if (!(inner > 0.0)) {
      t.first_violation = k;
      t.note = "n^{p/(p-1)} mu_n^{1/(1-p)} - 1 <= 0 at n = " + std::to_string(k);
      break;
    }
    mu = std::exp(p * std::log(static_cast<double>(k + 1)) + (1.0 - p) * std::log(inner)) + base;
    if (!std::isfinite(mu)) {
      t.first_violation = k + 1;
      t.note = "non-finite mu at n = " + std::to_string(k + 1);
      break;
    }
  }
  return t;
}

Thm114Result thm114_certify(double p, std::size_t n_max) {
  require_hlp_p(p);
  require(n_max >= 1, "thm114_certify requires N_max >= 1");
  Thm114Result r;
  r.p = p;
  r.n_max = n_max;
  r.trace = mu_direct(p, n_max);
  const auto target = thm114_target(p);
  for (std::size_t k = 1; k <= r.trace.values.size(); ++k) {
    const double goal = target.at(k);
    if (r.trace.mu(k) >= goal * (1.0 - kThresholdTol)) {
      r.n0 = k;
      r.margin = r.trace.mu(k) - goal;
      break;
    }
  }
  if (!r.n0) r.domain_failure = r.trace.first_violation;
  return r;
}

double thm114_margin_at(double p, std::size_t n0) {
  require(n0 >= 1, "n0 must be at least 1");
  const auto t = mu_direct(p, n0);
  if (t.values.size() < n0) return kNaN;
  return t.mu(n0) - thm114_target(p).at(n0);
}

double check_146(double p) {
  require_hlp_p(p);
  const double r = (1.0 - p) / p;
  return std::pow(2.0, p / (1.0 - p)) * (std::pow(r, 1.0 / (1.0 - p)) - r) -
         std::pow(1.0 + (3.0 - 1.0 / p) / 2.0, 1.0 / (1.0 - p));
}

Bracket bracket_146(double lo, double hi, double width) {
  require(lo < hi, "bracket_146 requires lo < hi");
  require(width > 0.0, "bracket width must be positive");
  const bool lo_sign = check_146(lo) >= 0.0;
  require(lo_sign != (check_146(hi) >= 0.0), "check_146 does not change sign on the bracket");
  Bracket b{lo, hi, 0};
  while (b.hi - b.lo > width) {
    const double mid = 0.5 * (b.lo + b.hi);
    ((check_146(mid) >= 0.0) == lo_sign ? b.lo : b.hi) = mid;
    ++b.iterations;
  }
  return b;
}

MuTrace mu_dual_hlp(double p, std::size_t n) {
  require_hlp_p(p);
  require(n >= 1, "mu_dual_hlp requires N >= 1");
  const double shift = std::pow(1.0 / p - 1.0, p / (p - 1.0));
  MuTrace t;
  t.name = "mu_dual_hlp";
  t.constraint = MuConstraint::floor;
  t.requested = n;
  t.target_name = "mu_n > n^p";

  double mu = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double log_k = std::log(static_cast<double>(k));
    t.values.push_back(mu);
    t.margins.push_back(k == 1 ? kInf : mu);
    const double tm = k == 1 ? kNaN : mu - std::exp(p * log_k);
    t.target_margins.push_back(tm);
    if (k >= 2 && !(tm > 0.0) && !t.first_target_violation) t.first_target_violation = k;
    if (k >= 2 && !(mu > 0.0)) {
      t.first_violation = k;
      break;
    }
    if (k == n) break;
    const double inner = std::exp(-p * log_k) + (mu > 0.0 ? std::pow(mu, 1.0 - p) : 0.0);
    mu = std::pow(inner, 1.0 / (1.0 - p)) - shift;
  }
  return t;
}

double hlp_f(double c, double p, double y) {
  const double u = 1.0 + c * y;
  const double v = 1.0 + (c + 1.0 / p) * y;
  if (!(u > 0.0) || !(v > 0.0)) return kNaN;
  return (1.0 / p - 1.0) * y + std::pow(u, 1.0 - p) - std::pow(v, 1.0 - p);
}

namespace {

double dual_scale(double p) { return std::pow(1.0 / p - 1.0, 1.0 / (p - 1.0)); }

Thm115Report feasibility(double p, std::size_t n0, double c, double mu_n0) {
  Thm115Report r;
  r.p = p;
  r.n0 = n0;
  r.c = c;
  r.margin_mu = mu_n0 - dual_scale(p) * (static_cast<double>(n0) + c);
  r.margin_c = c + 1.0 / (2.0 * p);
  const double y = 1.0 / static_cast<double>(n0);
  r.domain_ok = 1.0 + c * y > 0.0;
  r.margin_f = r.domain_ok ? hlp_f(c, p, y) : kNaN;
  const double tol = kThresholdTol * std::max(1.0, std::abs(mu_n0));
  r.feasible = r.domain_ok && r.margin_mu >= -tol && r.margin_c > 0.0 && r.margin_f >= 0.0;
  return r;
}

}  // namespace

Thm115Report thm115_feasible(double p, std::size_t n0, double c) {
  require_hlp_p(p);
  require(n0 >= 1, "n0 must be at least 1");
  const auto t = mu_dual_hlp(p, n0);
  if (t.values.size() < n0) {
    Thm115Report r;
    r.p = p;
    r.n0 = n0;
    r.c = c;
    r.domain_ok = false;
    return r;
  }
  return feasibility(p, n0, c, t.mu(n0));
}

SearchCResult search_c(double p, std::size_t n0_max) {
  require_hlp_p(p);
  require(n0_max >= 1, "n0_max must be at least 1");
  SearchCResult out;
  out.p = p;
  out.n0_max = n0_max;
  const auto t = mu_dual_hlp(p, n0_max);
  const double scale = dual_scale(p);
  const double c_floor = -1.0 / (2.0 * p);

  for (std::size_t n0 = 1; n0 <= t.values.size(); ++n0) {
    const double c_max = t.mu(n0) / scale - static_cast<double>(n0);
    if (!(c_max > c_floor)) continue;
    const auto rep = feasibility(p, n0, c_max, t.mu(n0));
    if (!rep.feasible) continue;

    double lo = c_floor;
    double hi = c_max;
    const double y = 1.0 / static_cast<double>(n0);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f = hlp_f(mid, p, y);
      (f >= 0.0 ? hi : lo) = mid;
    }
    out.n0 = n0;
    out.c = c_max;
    out.c_min = hlp_f(lo, p, y) >= 0.0 ? lo : hi;
    out.report = rep;
    break;
  }
  return out;
}

double probe_hlp(double p, double s, std::size_t n) {
  require_hlp_p(p);
  require(n >= 1, "probe_hlp requires N >= 1");
  require(s > 0.0, "probe_hlp requires s > 0");
  LogSumExp lhs;
  LogSumExp rhs;
  CompensatedSum tail;
  for (std::size_t k = n; k >= 1; --k) {
    const double log_k = std::log(static_cast<double>(k));
    tail.add(std::exp(-s * log_k));
    lhs.add(p * (std::log(tail.value()) - log_k));
    rhs.add(-s * p * log_k);
  }
  return std::exp(lhs.value() - rhs.value());
}

std::vector<ProbeGridPoint> probe_hlp_grid(double p, const std::vector<double>& s_values,
                                           const std::vector<std::size_t>& n_values, Execution exec) {
  require_hlp_p(p);
  for (double s : s_values) require(s > 0.0, "probe_hlp requires s > 0");
  for (auto n : n_values) require(n >= 1, "probe_hlp requires N >= 1");
  std::vector<ProbeGridPoint> out(s_values.size() * n_values.size());
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    for (std::size_t j = 0; j < n_values.size(); ++j) out[i * n_values.size() + j] = {s_values[i], n_values[j], 0.0};
  }
  const auto count = static_cast<std::int64_t>(out.size());
  if (exec == Execution::parallel) {
    apply_thread_cap();
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) out[i].ratio = probe_hlp(p, out[i].s, out[i].n);
  } else {
    for (auto& g : out) g.ratio = probe_hlp(p, g.s, g.n);
  }
  return out;
}

double probe_hlp_dual(double p, const std::vector<double>& x) {
  require_hlp_p(p);
  require(!x.empty(), "probe_hlp_dual requires N >= 1");
  for (double e : x) require(e > 0.0 && std::isfinite(e), "probe_hlp_dual: x must be positive and finite");
  const double q = p / (p - 1.0);
  const auto y = multiply(hlp_dual_matrix(x.size()), x);
  LogSumExp lhs;
  LogSumExp rhs;
  for (std::size_t k = 0; k < x.size(); ++k) {
    lhs.add(q * std::log(y[k]));
    rhs.add(q * std::log(x[k]));
  }
  return std::exp(lhs.value() - rhs.value() - q * std::log(p / (1.0 - p)));
}

DualTrialReport hlp_dual_trials(double p, std::size_t n, std::size_t trials, std::uint64_t seed, Execution exec,
                                double lo, double hi) {
  require_hlp_p(p);
  require(n >= 1 && trials >= 1, "hlp_dual_trials requires N >= 1 and trials >= 1");
  require(lo > 0.0 && hi >= lo, "trial range must satisfy 0 < lo <= hi");
  auto fn = [&](std::size_t, TrialRng& rng) { return probe_hlp_dual(p, rng.log_uniform_vector(n, lo, hi)); };
  const TrialMax m = exec == Execution::parallel ? max_over_trials(trials, seed, fn)
                                                 : max_over_trials_serial(trials, seed, fn);
  DualTrialReport r;
  r.p = p;
  r.n = n;
  r.trials = trials;
  r.max_ratio = m.value;
  r.argmax = m.trial;
  r.pass = m.value <= 1.0 + kRatioTol;
  return r;
}

}  // namespace lpnorm
