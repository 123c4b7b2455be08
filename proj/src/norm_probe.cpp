#include "lpnorm/norm_probe.hpp"

#include <algorithm>
#include <cmath>

#include "lpnorm/numeric.hpp"

namespace lpnorm {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

// Scales v in place so that ||v||_p = 1.
void normalize_lp(std::vector<double>& v, double p) {
  const double log_norm = log_power_sum(v, p) / p;
  const double s = std::exp(-log_norm);
  for (auto& e : v) e *= s;
}

// Entrywise v^e after dividing by max(v); the scale drops out of the
// iteration by homogeneity and keeps the powers in range.
std::vector<double> scaled_power(std::span<const double> v, double e) {
  const double m = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(v[i] / m, e);
  return out;
}

}  // namespace

double ratio_at(const FactorableSpec& spec, double p, std::span<const double> x) {
  require(p != 0.0, "ratio_at requires p != 0");
  require(x.size() == spec.size(), "ratio_at: length mismatch");
  require(std::any_of(x.begin(), x.end(), [](double e) { return e > 0.0; }), "ratio_at: zero vector");
  for (double e : x) {
    require(e >= 0.0 && std::isfinite(e), "ratio_at: x must be nonnegative and finite");
    if (p < 0.0) require(e > 0.0, "ratio_at: x must be positive for p < 0");
  }
  const auto y = multiply(spec, x);
  const double r = std::exp((log_power_sum(y, p) - log_power_sum(x, p)) / p);
  if (!std::isfinite(r)) throw NumericalError("ratio_at: non-finite power sum");
  return r;
}

NormEstimate power_lower_bound(const FactorableSpec& spec, double p, const PowerOptions& options) {
  require(p > 1.0, "power_lower_bound requires p > 1 (use the HLP probes for 0 < p < 1)");
  require(options.max_iter >= 1, "max_iter must be at least 1");
  require(options.tol > 0.0, "tol must be positive");

  const std::size_t n = spec.size();
  NormEstimate est;
  est.n = n;
  est.p = p;

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(static_cast<double>(i + 1), -1.0 / p - options.start_offset);
  if (!all_finite(x)) std::fill(x.begin(), x.end(), 1.0);
  normalize_lp(x, p);

  double ratio = ratio_at(spec, p, x);
  est.lower_bound = ratio;
  est.history.push_back(ratio);

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const auto y = multiply(spec, x);
    const auto z = scaled_power(y, p - 1.0);
    const auto u = multiply_transpose(spec, z);
    x = scaled_power(u, 1.0 / (p - 1.0));
    if (!all_finite(x)) throw NumericalError("power iteration: rescale failure (non-finite iterate)");
    normalize_lp(x, p);

    const double next = ratio_at(spec, p, x);
    est.iterations = it;
    est.residual = std::abs(next - ratio) / next;
    est.history.push_back(next);
    est.lower_bound = std::max(est.lower_bound, next);
    ratio = next;
    if (est.residual < options.tol) {
      est.converged = true;
      break;
    }
  }
  return est;
}

}  // namespace lpnorm
