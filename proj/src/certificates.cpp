#include "lpnorm/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "lpnorm/parallel.hpp"

namespace lpnorm {

namespace {

// base^e for base > 0; 0 for base == 0 and e > 0; NaN otherwise.
double frac_pow(double base, double e) {
  if (base > 0.0) return std::exp(e * std::log(base));
  if (base == 0.0 && e > 0.0) return 0.0;
  return kNaN;
}

template <class MarginFn>
ScanResult run_scan(std::size_t first, std::size_t last, const CheckOptions& opt, MarginFn&& fn) {
  return opt.exec == Execution::parallel ? scan_min(first, last, -opt.tol, fn)
                                         : scan_min_serial(first, last, -opt.tol, fn);
}

CertificateReport make_report(std::string method, const BoundParams& params, std::size_t n, const ScanResult& scan) {
  CertificateReport r;
  r.method = std::move(method);
  r.params = params;
  r.n = n;
  r.bound = params.bound();
  r.first_fail = scan.first_fail;
  r.pass = !scan.first_fail.has_value();
  r.worst_margin = scan.worst;
  r.worst_index = scan.worst_index;
  if (r.first_fail && scan.worst == -kInf) r.note = "domain violation (nonpositive base)";
  return r;
}

std::size_t scan_last(std::size_t n) { return n >= 2 ? n - 1 : 0; }

void require_normalized(const FactorableSpec& spec) {
  require(spec.normalized(), "certificate requires a normalized spec (a_1 == b_1)");
}

}  // namespace

double MuTrace::min_margin() const {
  double m = kInf;
  for (double v : margins) m = std::min(m, v);
  return m;
}

double MuTrace::min_target_margin() const {
  double m = kInf;
  for (double v : target_margins) {
    if (!std::isnan(v)) m = std::min(m, v);
  }
  return m;
}

BoundParams make_bound_params(double p, double L) {
  require(p > 1.0, "p must exceed 1");
  require(L > 0.0 && L < p, "L must satisfy 0 < L < p");
  BoundParams b;
  b.p = p;
  b.q = p / (p - 1.0);
  b.L = L;
  b.lambda_p = std::pow(1.0 - L / p, p);
  b.U_p = 1.0 / b.lambda_p;
  return b;
}

CartlidgeScan cartlidge_scan(const WeightSequence& w) {
  const std::size_t n = w.size();
  require(n >= 2, "cartlidge_L requires N >= 2");
  auto diff = [&](std::size_t i) { return w.partial_ratio(i + 1) - w.partial_ratio(i); };
  const auto scan = scan_min(1, n - 1, -kInf, [&](std::size_t i) { return -diff(i); });
  CartlidgeScan out;
  out.L = -scan.worst;
  out.argmax = scan.worst_index;

  const std::size_t count = n - 1;
  const std::size_t window = std::max<std::size_t>(2, count / 10);
  if (count >= window + 1) {
    bool increasing = true;
    for (std::size_t i = count - window + 1; i <= count; ++i) increasing = increasing && diff(i) >= diff(i - 1);
    out.tail_increasing = increasing && diff(count) > diff(count - window);
  }
  return out;
}

double cartlidge_L(const WeightSequence& w) { return cartlidge_scan(w).L; }

CertificateReport check_cartlidge(const WeightSequence& w, double p) {
  require(p > 1.0, "p must exceed 1");
  const auto scan = cartlidge_scan(w);
  CertificateReport r;
  r.method = "cartlidge";
  r.n = w.size();
  r.params.p = p;
  r.params.q = p / (p - 1.0);
  r.params.L = scan.L;
  r.worst_index = scan.argmax;
  r.worst_margin = relative_margin(scan.L, p);
  r.pass = scan.L < p;
  if (r.pass) {
    r.params = make_bound_params(p, scan.L);
    r.bound = r.params.bound();
  } else {
    r.params.lambda_p = kNaN;
    r.params.U_p = kNaN;
    r.bound = kInf;
    r.first_fail = scan.argmax;
  }
  if (scan.tail_increasing) r.note = "differences still increasing at the truncation; the sup may exceed L";
  return r;
}

CertificateReport check_cor12(const WeightSequence& w, double p, double L, const CheckOptions& opt) {
  const auto params = make_bound_params(p, L);
  const auto scan = run_scan(1, scan_last(w.size()), opt, [&](std::size_t n) {
    const double base = 1.0 - L * w.lambda(n) / (p * w.partial(n));
    if (!(base > 0.0)) return -kInf;
    const double rhs = w.partial_ratio(n) * std::pow(base, 1.0 - p) + L / p;
    return relative_margin(w.partial_ratio(n + 1), rhs);
  });
  return make_report("cor12", params, w.size(), scan);
}

CertificateReport check_thm11_product(const WeightSequence& w, double p, double L, const CheckOptions& opt) {
  const auto params = make_bound_params(p, L);
  const std::size_t last = scan_last(w.size());
  const double bound = params.bound();
  // S_n = r_n (lambda_n/Lambda_n + (Lambda_{n-1}/Lambda_n) S_{n-1}), S_0 = 0.
  std::vector<double> sums(last + 1, 0.0);
  double prev = 0.0;
  for (std::size_t n = 1; n <= last; ++n) {
    const double r = frac_pow((w.partial_ratio(n + 1) - L / p) / w.partial_ratio(n), 1.0 / (p - 1.0));
    prev = r * (w.lambda(n) / w.partial(n) + (w.partial(n - 1) / w.partial(n)) * prev);
    sums[n] = prev;
  }
  const auto scan = run_scan(1, last, opt, [&](std::size_t n) { return relative_margin(sums[n], bound); });
  return make_report("thm11", params, w.size(), scan);
}

CertificateReport check_thm14_product(const FactorableSpec& spec, double p, double L, const CheckOptions& opt) {
  require_normalized(spec);
  const auto params = make_bound_params(p, L);
  const std::size_t last = scan_last(spec.size());
  const double bound = params.bound();
  std::vector<double> sums(last + 1, 0.0);
  double prev = 0.0;
  for (std::size_t n = 1; n <= last; ++n) {
    const double r = frac_pow((spec.shifted_ratio(n) + 1.0 - L / p) / spec.diag_ratio(n), 1.0 / (p - 1.0));
    const double carry = n >= 2 ? spec.row_factor(n - 1) / spec.row_factor(n) : 0.0;
    prev = r * (spec.column_factor(n) / spec.row_factor(n) + carry * prev);
    sums[n] = prev;
  }
  const auto scan = run_scan(1, last, opt, [&](std::size_t n) { return relative_margin(sums[n], bound); });
  return make_report("thm14", params, spec.size(), scan);
}

CertificateReport check_thm17(const FactorableSpec& spec, double p, double L, const CheckOptions& opt) {
  require_normalized(spec);
  const auto params = make_bound_params(p, L);
  const double s = std::pow(params.lambda_p, 1.0 - 1.0 / p);
  const double e1 = 1.0 / (p - 1.0);
  const double ep = p / (p - 1.0);
  const auto scan = run_scan(1, scan_last(spec.size()), opt, [&](std::size_t n) {
    const double next = spec.diag_ratio(n + 1);
    const double lower = s * spec.diag_ratio(n) + 1.0 - params.lambda_p - s;
    if (!(lower > 0.0)) return -kInf;
    const double lower_pow = frac_pow(lower, e1);
    const double lhs = frac_pow(s * next + 1.0 - s, e1) * (lower_pow + frac_pow(spec.shifted_ratio(n), ep));
    const double rhs = frac_pow(next, ep) * lower_pow;
    return relative_margin(lhs, rhs);
  });
  return make_report("thm17", params, spec.size(), scan);
}

CertificateReport check_cor18(const WeightSequence& w, double L, const CheckOptions& opt) {
  const auto params = make_bound_params(2.0, L);
  const double factor = (L * L / 4.0) * ((1.0 + L / 2.0) / (1.0 - L / 2.0));
  const auto scan = run_scan(1, scan_last(w.size()), opt, [&](std::size_t n) {
    const double next = w.partial_ratio(n + 1);
    return relative_margin(next - w.partial_ratio(n), L + factor / (next + L / 2.0));
  });
  return make_report("cor18", params, w.size(), scan);
}

MuTrace mu_primal(const FactorableSpec& spec, double p, double lambda_p, std::size_t n) {
  require(p > 1.0, "mu_primal requires p > 1");
  require(lambda_p > 0.0 && std::isfinite(lambda_p), "mu_primal requires lambda_p > 0");
  require(n >= 1 && n <= spec.size(), "mu_primal: N must satisfy 1 <= N <= spec size");
  require_normalized(spec);

  MuTrace t;
  t.name = "mu_primal";
  t.constraint = MuConstraint::floor;
  t.requested = n;
  t.target_name = "mu_n >= s a_{n-1}/b_{n-1} + 1 - lambda_p - s";
  const double s = std::pow(lambda_p, 1.0 - 1.0 / p);

  auto push = [&](double mu) {
    const std::size_t idx = t.values.size() + 1;
    t.values.push_back(mu);
    t.margins.push_back(mu);
    double tm = kNaN;
    if (idx >= 2) {
      const double target = s * spec.diag_ratio(idx - 1) + 1.0 - lambda_p - s;
      tm = mu - target;
      if (tm < -kConditionTol * std::max({1.0, std::abs(mu), std::abs(target)}) && !t.first_target_violation) {
        t.first_target_violation = idx;
      }
    }
    t.target_margins.push_back(tm);
    if (!(mu >= 0.0)) t.first_violation = idx;
  };

  push(1.0);
  for (std::size_t k = 1; k < n && t.pass(); ++k) {
    const double mu = t.values.back();
    const double shifted = spec.shifted_ratio(k - 1);  // a_{k-1} / b_k
    double head;
    if (mu == 0.0) {
      head = 0.0;
    } else {
      const double r = shifted > 0.0 ? std::exp((p * std::log(shifted) - std::log(mu)) / (p - 1.0)) : 0.0;
      head = std::exp(p * std::log(spec.diag_ratio(k)) - (p - 1.0) * std::log1p(r));
    }
    const double next = head - lambda_p;
    if (!std::isfinite(next)) {
      t.note = "non-finite power at n = " + std::to_string(k + 1);
      push(kNaN);
      break;
    }
    push(next);
  }
  return t;
}

MuTrace mu_dual(const FactorableSpec& spec, double p, double U_p, std::size_t n) {
  require(p > 1.0, "mu_dual requires p > 1");
  require(U_p > 0.0 && std::isfinite(U_p), "mu_dual requires U_p > 0");
  require(n >= 1 && n <= spec.size(), "mu_dual: N must satisfy 1 <= N <= spec size");
  require_normalized(spec);

  const double q = p / (p - 1.0);
  const double base = std::pow(U_p, -q / p);
  MuTrace t;
  t.name = "mu_dual";
  t.constraint = MuConstraint::ceiling;
  t.requested = n;

  double mu = base;
  for (std::size_t k = 1; k <= n; ++k) {
    const double log_diag = std::log(spec.diag_ratio(k));
    const double margin = std::exp(q * log_diag) - mu;
    t.values.push_back(mu);
    t.margins.push_back(margin);
    if (!(margin > 0.0)) {
      t.first_violation = k;
      break;
    }
    if (k == n) break;
    // (a_k/b_k)^p mu^{-(p-1)} - 1 > 0 exactly when the ceiling holds.
    const double den_base = std::expm1(p * log_diag - (p - 1.0) * std::log(mu));
    if (!(den_base > 0.0)) {
      t.first_violation = k;
      t.note = "denominator nonpositive at n = " + std::to_string(k);
      break;
    }
    mu = base + std::exp(q * std::log(spec.shifted_ratio(k)) - (q - 1.0) * std::log(den_base));
    if (!std::isfinite(mu)) {
      t.note = "non-finite power at n = " + std::to_string(k + 1);
      t.values.push_back(kNaN);
      t.margins.push_back(-kInf);
      t.first_violation = k + 1;
      break;
    }
  }
  return t;
}

double direct_inequality_ratio(const FactorableSpec& spec, double p, double U_p, const std::vector<double>& x) {
  const auto y = multiply(spec, x);
  return std::exp(log_power_sum(y, p) - log_power_sum(x, p)) / U_p;
}

}  // namespace lpnorm
