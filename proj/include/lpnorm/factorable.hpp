#ifndef LPNORM_FACTORABLE_HPP
#define LPNORM_FACTORABLE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lpnorm/weights.hpp"

namespace lpnorm {

/// Lower-triangular factorable matrix with entries M(n, k) = b_k / a_n for
/// k <= n and 0 above the diagonal. Only the factor vectors are stored.
/// Indices in entry()/row_factor()/column_factor() are 1-based.
class FactorableSpec {
 public:
  FactorableSpec(std::string kind, std::vector<double> a, std::vector<double> b);

  [[nodiscard]] const std::string& kind() const { return kind_; }
  [[nodiscard]] std::size_t size() const { return a_.size(); }
  [[nodiscard]] double row_factor(std::size_t n) const { return a_[n - 1]; }
  [[nodiscard]] double column_factor(std::size_t k) const { return b_[k - 1]; }
  [[nodiscard]] std::span<const double> row_factors() const { return a_; }
  [[nodiscard]] std::span<const double> column_factors() const { return b_; }
  [[nodiscard]] double entry(std::size_t n, std::size_t k) const { return k <= n ? b_[k - 1] / a_[n - 1] : 0.0; }

  /// a_1 == b_1 up to 1e-14 relative, as the certificates require.
  [[nodiscard]] bool normalized() const;

  /// a_n / b_n and a_n / b_{n+1}: the two ratios every recurrence consumes.
  /// diag_ratio(0) is not defined; shifted_ratio(0) == a_0 / b_1 == 0.
  [[nodiscard]] double diag_ratio(std::size_t n) const { return a_[n - 1] / b_[n - 1]; }
  [[nodiscard]] double shifted_ratio(std::size_t n) const { return n == 0 ? 0.0 : a_[n - 1] / b_[n]; }

  /// The first n rows/columns.
  [[nodiscard]] FactorableSpec truncated(std::size_t n) const;

 private:
  std::string kind_;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// a_n = Lambda_n, b_k = lambda_k: entries lambda_k / Lambda_n.
FactorableSpec weighted_mean(const WeightSequence& w);

/// a_n = lambda_n^{-1/p} Lambda_n^{c/p}, b_n = lambda_n^{1-1/p} Lambda_n^{-(1-c/p)}.
/// Induces the weighted Copson inequality with constant (p/(c-1))^p. Requires
/// p > 1 and c > 1.
FactorableSpec copson_matrix(const WeightSequence& w, double p, double c);

/// a_n = lambda_n^{1-1/p} Lambda_n^alpha / (Lambda_n^alpha - Lambda_{n-1}^alpha),
/// b_n = lambda_n^{1-1/p}; constant (alpha p/(p-1))^p. Requires p > 1, alpha > 0.
FactorableSpec bge_matrix(const WeightSequence& w, double p, double alpha);

/// a_n = 1, b_k = 1/k.
FactorableSpec hlp_dual_matrix(std::size_t n);

/// y_n = sum_{k<=n} b_k x_k / a_n via one compensated prefix sum.
std::vector<double> multiply(const FactorableSpec& spec, std::span<const double> x);

/// u_k = b_k sum_{n>=k} z_n / a_n (the transpose, truncated at N).
std::vector<double> multiply_transpose(const FactorableSpec& spec, std::span<const double> z);

}  // namespace lpnorm

#endif  // LPNORM_FACTORABLE_HPP
