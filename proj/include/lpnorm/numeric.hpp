#ifndef LPNORM_NUMERIC_HPP
#define LPNORM_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace lpnorm {

/// Thrown when an operation is called outside its parameter domain
/// (nonpositive weight, p <= 1 where p > 1 is required, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an intermediate quantity stops being finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Default relative slack for "lhs <= rhs" style per-index conditions.
inline constexpr double kConditionTol = 1e-12;
/// Slack for randomized "lhs/rhs <= 1" trials.
inline constexpr double kRatioTol = 1e-10;

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Accumulates log(sum_i exp(t_i)) without overflow. Terms equal to -inf
/// (zero summands) are ignored.
class LogSumExp {
 public:
  void add(double log_term);
  [[nodiscard]] double value() const;

 private:
  double max_ = -kInf;
  double scaled_ = 0.0;
};

/// log(sum_i w_i * v_i^e) over entries with w_i > 0; entries with v_i == 0
/// contribute nothing when e > 0. Used for every ratio of power sums so that
/// huge or tiny magnitudes never overflow.
[[nodiscard]] double log_power_sum(std::span<const double> v, double e);
[[nodiscard]] double log_weighted_power_sum(std::span<const double> w, std::span<const double> v, double e);

/// (rhs - lhs) / max(|lhs|, |rhs|, tiny): a scale-free signed margin for a
/// condition lhs <= rhs. NaN inputs give -inf.
[[nodiscard]] double relative_margin(double lhs, double rhs);

void require(bool ok, const std::string& what);

[[nodiscard]] inline bool is_finite(double v) { return std::isfinite(v); }

}  // namespace lpnorm

#endif  // LPNORM_NUMERIC_HPP
