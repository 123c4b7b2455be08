#include "lpnorm/copson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lpnorm/factorable.hpp"
#include "lpnorm/parallel.hpp"

namespace lpnorm {

namespace {

constexpr double kIneq36Tol = 1e-12;

void check_branch_c(CopsonBranch b, double c) {
  switch (b) {
    case CopsonBranch::b11:
    case CopsonBranch::b14:
      require(c > 1.0, std::string(to_string(b)) + " requires c > 1");
      break;
    case CopsonBranch::b12:
    case CopsonBranch::b13:
      require(c >= 0.0 && c < 1.0, std::string(to_string(b)) + " requires 0 <= c < 1");
      break;
  }
}

// Recomputes target margins over the computed values. sign = +1 for a lower
// bound target (margin = mu - bound), -1 for an upper bound (bound - mu).
void set_target(MuTrace& t, std::string name, double sign, const std::function<double(std::size_t)>& bound_at) {
  t.target_name = std::move(name);
  t.target_margins.assign(t.values.size(), kNaN);
  t.first_target_violation.reset();
  for (std::size_t n = 1; n <= t.values.size(); ++n) {
    const double bound = bound_at(n);
    const double mu = t.values[n - 1];
    if (std::isnan(bound)) continue;
    const double m = sign * (mu - bound);
    t.target_margins[n - 1] = std::isnan(m) ? -kInf : m;
    const double scale = std::max({1.0, std::abs(mu), std::abs(bound)});
    if (!(m >= -kConditionTol * scale) && !t.first_target_violation) t.first_target_violation = n;
  }
}

double log_of(double v) { return v > 0.0 ? std::log(v) : -kInf; }

}  // namespace

std::string_view to_string(CopsonBranch b) {
  switch (b) {
    case CopsonBranch::b11: return "1.1'";
    case CopsonBranch::b12: return "1.2'";
    case CopsonBranch::b13: return "1.3'";
    case CopsonBranch::b14: return "1.4'";
  }
  return "?";
}

CopsonBranch parse_copson_branch(std::string_view text) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), '\''), s.end());
  if (s == "1.1" || s == "b11") return CopsonBranch::b11;
  if (s == "1.2" || s == "b12") return CopsonBranch::b12;
  if (s == "1.3" || s == "b13") return CopsonBranch::b13;
  if (s == "1.4" || s == "b14") return CopsonBranch::b14;
  throw DomainError("unknown Copson branch '" + std::string(text) + "' (expected 1.1', 1.2', 1.3' or 1.4')");
}

double copson_log_constant(CopsonBranch b, double p, double c) {
  require(p > 1.0, "Copson branches require p > 1");
  check_branch_c(b, c);
  const bool upper = b == CopsonBranch::b11 || b == CopsonBranch::b14;
  return p * std::log(p / (upper ? c - 1.0 : 1.0 - c));
}

double cp_equation(double p, double c) {
  const double t = (1.0 - c) / p;
  return std::pow(1.0 + t, 1.0 - p) - t;
}

RootResult solve_cp(double p) {
  require(p > 1.0, "solve_cp requires p > 1");
  auto g = [p](double c) { return cp_equation(p, c); };
  // g' > 0: g'(c) = ((p-1)/p)(1+t)^{-p} + 1/p.
  auto dg = [p](double c) { return ((p - 1.0) / p) * std::pow(1.0 + (1.0 - c) / p, -p) + 1.0 / p; };

  double hi = 0.0;
  double lo = -50.0;
  while (g(lo) > 0.0) {
    if (lo <= -1e6) throw NumericalError("solve_cp: no sign change on (-1e6, 0)");
    lo = std::max(lo * 10.0, -1e6);
  }
  if (!(g(hi) > 0.0)) throw NumericalError("solve_cp: g(0) is not positive");

  RootResult r;
  double c = 0.5 * (lo + hi);
  for (r.iterations = 1; r.iterations <= 200; ++r.iterations) {
    const double gc = g(c);
    if (gc == 0.0) break;
    (gc < 0.0 ? lo : hi) = c;
    double next = c - gc / dg(c);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - c) <= 1e-16 * std::max(1.0, std::abs(c));
    c = next;
    if (done || hi - lo <= 1e-16 * std::max(1.0, std::abs(c))) break;
  }
  r.c_p = c;
  r.residual = std::abs(g(c));
  return r;
}

double thm15_threshold(double p) {
  require(p > 1.0, "thm15_threshold requires p > 1");
  const double q = p / (p - 1.0);
  return p - (p - 1.0) * solve_cp(q).c_p;
}

bool thm15_admissible(double p, double c) { return c > 1.0 && c <= thm15_threshold(p); }

double ineq36_margin(double p, double c, double y) {
  const double t = (c - 1.0) / p;
  const double base = t * y + std::pow(1.0 - y, (c - 1.0) / (p - 1.0));
  return std::pow(base, 1.0 - p) - (1.0 + t * y);
}

Ineq36Report check_ineq_36prime(double p, double c, std::size_t grid) {
  require(p > 1.0, "check_ineq_36prime requires p > 1");
  require(c > 1.0, "check_ineq_36prime requires c > 1");
  require(grid >= 1000, "check_ineq_36prime requires grid >= 1000");
  Ineq36Report r;
  r.p = p;
  r.c = c;
  r.grid = grid;
  const double h = 1.0 / static_cast<double>(grid);
  std::size_t best = 1;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double y = static_cast<double>(i) * h;
    const double m = ineq36_margin(p, c, y);
    if (m < r.min_margin) {
      r.min_margin = m;
      r.argmin = y;
      best = i;
    }
  }
  // Golden-section refinement on the neighbouring cells.
  double a = static_cast<double>(best - 1) * h;
  double b = std::min(1.0, static_cast<double>(best + 1) * h);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = ineq36_margin(p, c, x1);
  double f2 = ineq36_margin(p, c, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = ineq36_margin(p, c, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = ineq36_margin(p, c, x2);
    }
  }
  for (auto [y, m] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (y > 0.0 && m < r.min_margin) {
      r.min_margin = m;
      r.argmin = y;
    }
  }
  r.pass = r.min_margin >= -kIneq36Tol;
  return r;
}

double copson_ratio(const WeightSequence& w, double p, double c, CopsonBranch branch, const std::vector<double>& x) {
  const double log_k = copson_log_constant(branch, p, c);
  const std::size_t n = w.size();
  require(x.size() == n, "copson_ratio: x length differs from N");
  for (double e : x) require(e > 0.0 && std::isfinite(e), "copson_ratio: x must be positive and finite");

  const bool starred = branch == CopsonBranch::b13 || branch == CopsonBranch::b14;
  const bool suffix = branch == CopsonBranch::b12 || branch == CopsonBranch::b14;

  std::vector<double> inner(n);
  CompensatedSum acc;
  if (suffix) {
    for (std::size_t k = n; k >= 1; --k) {
      acc.add(w.lambda(k) * x[k - 1]);
      inner[k - 1] = acc.value();
    }
  } else {
    for (std::size_t k = 1; k <= n; ++k) {
      acc.add(w.lambda(k) * x[k - 1]);
      inner[k - 1] = acc.value();
    }
  }

  LogSumExp lhs;
  LogSumExp rhs;
  for (std::size_t k = 1; k <= n; ++k) {
    const double big = starred ? w.tail(k) : w.partial(k);
    const double log_w = std::log(w.lambda(k)) + (p - c) * std::log(big);
    lhs.add(log_w + p * (log_of(inner[k - 1]) - std::log(big)));
    rhs.add(log_w + p * std::log(x[k - 1]));
  }
  return std::exp(lhs.value() - rhs.value() - log_k);
}

std::vector<double> copson_substitution(const WeightSequence& w, double p, double c, const std::vector<double>& x) {
  require(x.size() == w.size(), "copson_substitution: length mismatch");
  std::vector<double> z(x.size());
  for (std::size_t k = 1; k <= x.size(); ++k) {
    z[k - 1] = std::exp(std::log(w.lambda(k)) / p + ((p - c) / p) * std::log(w.partial(k))) * x[k - 1];
  }
  return z;
}

namespace {

template <class RatioFn>
CopsonReport run_trials(const WeightSequence& w, const TrialOptions& opt, RatioFn&& ratio) {
  require(opt.trials >= 1, "trials must be at least 1");
  require(opt.lo > 0.0 && opt.hi >= opt.lo, "trial range must satisfy 0 < lo <= hi");
  auto fn = [&](std::size_t, TrialRng& rng) { return ratio(rng.log_uniform_vector(w.size(), opt.lo, opt.hi)); };
  const TrialMax m = opt.exec == Execution::parallel ? max_over_trials(opt.trials, opt.seed, fn)
                                                     : max_over_trials_serial(opt.trials, opt.seed, fn);
  CopsonReport r;
  r.n = w.size();
  r.trials = opt.trials;
  r.max_ratio = m.value;
  r.min_margin = 1.0 - m.value;
  r.argmin = m.trial;
  r.pass = m.value <= 1.0 + kRatioTol;
  return r;
}

}  // namespace

CopsonReport check_copson_numeric(const WeightSequence& w, double p, double c, CopsonBranch branch,
                                  const TrialOptions& opt) {
  copson_log_constant(branch, p, c);
  auto r = run_trials(w, opt, [&](const std::vector<double>& x) { return copson_ratio(w, p, c, branch, x); });
  r.branch = to_string(branch);
  r.p = p;
  r.c_or_alpha = c;
  return r;
}

double copson_probe(const WeightSequence& w, double p, double c, double offset) {
  std::vector<double> x(w.size());
  for (std::size_t k = 1; k <= x.size(); ++k) x[k - 1] = std::pow(static_cast<double>(k), -1.0 / p - offset);
  return copson_ratio(w, p, c, CopsonBranch::b11, x);
}

std::vector<ProbePoint> copson_probe_schedule(const WeightSequence& w, double p, double c, std::size_t n_start,
                                              double offset) {
  require(n_start >= 1 && n_start <= w.size(), "probe schedule start must satisfy 1 <= n_start <= N");
  std::vector<ProbePoint> out;
  std::size_t n = n_start;
  while (true) {
    out.push_back({n, copson_probe(w.truncated(n), p, c, offset)});
    if (n == w.size()) break;
    n = std::min(2 * n, w.size());
  }
  return out;
}

double bge_ratio(const WeightSequence& w, double p, double alpha, const std::vector<double>& x) {
  require(p >= 1.0, "bge requires p >= 1");
  require(alpha > 0.0, "bge requires alpha > 0");
  const std::size_t n = w.size();
  require(x.size() == n, "bge_ratio: x length differs from N");
  for (double e : x) require(e >= 0.0 && std::isfinite(e), "bge_ratio: x must be nonnegative and finite");

  CompensatedSum weighted;
  CompensatedSum plain;
  LogSumExp lhs;
  LogSumExp rhs;
  for (std::size_t k = n; k >= 1; --k) {
    const double log_big = std::log(w.partial(k));
    weighted.add(std::exp(alpha * log_big) * x[k - 1]);
    plain.add(x[k - 1]);
    const double log_lam = std::log(w.lambda(k));
    lhs.add(log_lam + p * log_of(weighted.value()));
    rhs.add(log_lam + alpha * p * log_big + p * log_of(plain.value()));
  }
  require(rhs.value() > -kInf, "bge_ratio: zero vector");
  return std::exp(lhs.value() - rhs.value() - p * std::log(alpha * p + 1.0));
}

CopsonReport check_bge(const WeightSequence& w, double p, double alpha, const TrialOptions& opt) {
  require(p >= 1.0, "bge requires p >= 1");
  require(alpha > 0.0, "bge requires alpha > 0");
  auto r = run_trials(w, opt, [&](const std::vector<double>& x) { return bge_ratio(w, p, alpha, x); });
  r.branch = "1.5";
  r.p = p;
  r.c_or_alpha = alpha;
  return r;
}

bool thm16_admissible(double p, double alpha) {
  require(p > 1.0, "thm16_admissible requires p > 1");
  return alpha >= 1.0 - 1.0 / (2.0 * p);
}

MuTrace mu_dual_copson(const WeightSequence& w, double p, double c, std::size_t n) {
  require(p > 1.0, "mu_dual_copson requires p > 1");
  require(c > 1.0, "mu_dual_copson requires c > 1");
  const double q = p / (p - 1.0);
  const double a = p / (c - 1.0);
  auto t = mu_dual(copson_matrix(w, p, c), p, std::pow(a, p), n);
  t.name = "mu_dual_copson";
  set_target(t, "mu_n <= (Lam_n/lam_n)(lam_n/Lam_n + a)^{1-q}", -1.0, [&](std::size_t k) {
    const double y = w.lambda(k) / w.partial(k);
    return std::pow(y + a, 1.0 - q) / y;
  });
  return t;
}

MuTrace mu_bge(const WeightSequence& w, double p, double alpha, std::size_t n, BgeRoute route) {
  require(p > 1.0, "mu_bge requires p > 1");
  require(alpha > 0.0, "mu_bge requires alpha > 0");
  const double q = p / (p - 1.0);
  const double log_u = p * std::log(alpha * p / (p - 1.0));
  const auto spec = bge_matrix(w, p, alpha);
  // 1 - (Lam_{k-1}/Lam_k)^alpha
  auto gap = [&](std::size_t k) { return -std::expm1(alpha * std::log1p(-w.lambda(k) / w.partial(k))); };

  if (route == BgeRoute::dual) {
    auto t = mu_dual(spec, p, std::exp(log_u), n);
    t.name = "mu_bge_dual";
    const double a = std::pow(alpha, q) * std::pow(q, q - 1.0);
    set_target(t, "mu_n <= (gap_n^{q/(q-1)} + (a lam_n/Lam_n)^{1/(q-1)})^{1-q}", -1.0, [&](std::size_t k) {
      const double y = w.lambda(k) / w.partial(k);
      return std::pow(std::pow(gap(k), q / (q - 1.0)) + std::pow(a * y, 1.0 / (q - 1.0)), 1.0 - q);
    });
    return t;
  }

  auto t = mu_primal(spec, p, std::exp(-log_u), n);
  t.name = "mu_bge_primal";
  const double a = p / (p - 1.0);
  set_target(t, "mu_n >= y^{p-1} / (a^{p-1} (1-(1-y)^alpha)^p), y = lam_{n-1}/Lam_{n-1}", 1.0, [&](std::size_t k) {
    if (k < 2) return kNaN;
    const double y = w.lambda(k - 1) / w.partial(k - 1);
    return std::pow(y, p - 1.0) / (std::pow(a, p - 1.0) * std::pow(gap(k - 1), p));
  });
  return t;
}

}  // namespace lpnorm
