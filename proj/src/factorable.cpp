#include "lpnorm/factorable.hpp"

#include <algorithm>
#include <cmath>

#include "lpnorm/numeric.hpp"

namespace lpnorm {

FactorableSpec::FactorableSpec(std::string kind, std::vector<double> a, std::vector<double> b)
    : kind_(std::move(kind)), a_(std::move(a)), b_(std::move(b)) {
  require(!a_.empty(), "factorable spec needs N >= 1");
  require(a_.size() == b_.size(), "row and column factor vectors differ in length");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!(a_[i] > 0.0) || !std::isfinite(a_[i]) || !(b_[i] > 0.0) || !std::isfinite(b_[i])) {
      throw DomainError("factor " + std::to_string(i + 1) + " of '" + kind_ + "' is not positive and finite");
    }
  }
}

bool FactorableSpec::normalized() const { return std::abs(a_[0] - b_[0]) <= 1e-14 * std::max(a_[0], b_[0]); }

FactorableSpec FactorableSpec::truncated(std::size_t n) const {
  require(n >= 1 && n <= size(), "truncation must satisfy 1 <= n <= N");
  return FactorableSpec(kind_, std::vector<double>(a_.begin(), a_.begin() + static_cast<long>(n)),
                        std::vector<double>(b_.begin(), b_.begin() + static_cast<long>(n)));
}

FactorableSpec weighted_mean(const WeightSequence& w) {
  const auto partials = w.partials();
  const auto values = w.values();
  return FactorableSpec("weighted_mean", std::vector<double>(partials.begin(), partials.end()),
                        std::vector<double>(values.begin(), values.end()));
}

FactorableSpec copson_matrix(const WeightSequence& w, double p, double c) {
  require(p > 1.0, "copson_matrix requires p > 1");
  require(c > 1.0, "copson_matrix requires c > 1");
  const std::size_t n = w.size();
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double lam = w.lambda(i);
    const double big = w.partial(i);
    a[i - 1] = std::pow(lam, -1.0 / p) * std::pow(big, c / p);
    b[i - 1] = std::pow(lam, 1.0 - 1.0 / p) * std::pow(big, -(1.0 - c / p));
  }
  return FactorableSpec("copson", std::move(a), std::move(b));
}

FactorableSpec bge_matrix(const WeightSequence& w, double p, double alpha) {
  require(p > 1.0, "bge_matrix requires p > 1");
  require(alpha > 0.0, "bge_matrix requires alpha > 0");
  const std::size_t n = w.size();
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double lam = w.lambda(i);
    // 1 - (Lambda_{n-1}/Lambda_n)^alpha without cancellation; equals 1 at n = 1.
    const double gap = -std::expm1(alpha * std::log1p(-lam / w.partial(i)));
    b[i - 1] = std::pow(lam, 1.0 - 1.0 / p);
    a[i - 1] = b[i - 1] / gap;
  }
  return FactorableSpec("bge", std::move(a), std::move(b));
}

FactorableSpec hlp_dual_matrix(std::size_t n) {
  require(n >= 1, "hlp_dual_matrix requires N >= 1");
  std::vector<double> a(n, 1.0);
  std::vector<double> b(n);
  for (std::size_t k = 1; k <= n; ++k) b[k - 1] = 1.0 / static_cast<double>(k);
  return FactorableSpec("hlp_dual", std::move(a), std::move(b));
}

std::vector<double> multiply(const FactorableSpec& spec, std::span<const double> x) {
  require(x.size() == spec.size(), "multiply: x has length " + std::to_string(x.size()) + ", spec has N = " +
                                       std::to_string(spec.size()));
  std::vector<double> y(x.size());
  CompensatedSum acc;
  for (std::size_t n = 1; n <= x.size(); ++n) {
    acc.add(spec.column_factor(n) * x[n - 1]);
    y[n - 1] = acc.value() / spec.row_factor(n);
  }
  return y;
}

std::vector<double> multiply_transpose(const FactorableSpec& spec, std::span<const double> z) {
  require(z.size() == spec.size(), "multiply_transpose: length mismatch");
  std::vector<double> u(z.size());
  CompensatedSum acc;
  for (std::size_t k = z.size(); k >= 1; --k) {
    acc.add(z[k - 1] / spec.row_factor(k));
    u[k - 1] = spec.column_factor(k) * acc.value();
  }
  return u;
}

}  // namespace lpnorm
