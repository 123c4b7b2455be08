#ifndef LPNORM_CERTIFICATES_HPP
#define LPNORM_CERTIFICATES_HPP

// Sufficient conditions certifying ||A||_{p,p} <= p/(p-L) for weighted mean
// and factorable matrices, and the primal/dual mu-recurrences behind them.
//
// Conventions. A certificate is evaluated on the first N indices of its input.
// Per-index conditions "lhs <= rhs" are reported through the relative margin
// (rhs - lhs) / max(|lhs|, |rhs|); an index fails when its margin is below
// -tol. Conditions that reference index n+1 are checked for n = 1..N-1.
// A domain violation (a nonpositive base under a fractional power) fails the
// index with margin -inf and a note.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lpnorm/factorable.hpp"
#include "lpnorm/numeric.hpp"
#include "lpnorm/weights.hpp"

namespace lpnorm {

enum class Execution { parallel, serial };

struct CheckOptions {
  double tol = kConditionTol;
  Execution exec = Execution::parallel;
};

/// p, its conjugate q, L and the derived lambda_p = (1 - L/p)^p, U_p = 1/lambda_p.
struct BoundParams {
  double p = 2.0;
  double q = 2.0;
  double L = 1.0;
  double lambda_p = 0.25;
  double U_p = 4.0;

  /// p / (p - L), the certified operator norm bound.
  [[nodiscard]] double bound() const { return p / (p - L); }
};

/// Requires p > 1 and 0 < L < p.
BoundParams make_bound_params(double p, double L);

struct CertificateReport {
  std::string method;
  BoundParams params;
  std::size_t n = 0;
  bool pass = true;
  std::optional<std::size_t> first_fail;
  double worst_margin = kInf;
  std::size_t worst_index = 0;
  double bound = 0.0;
  std::string note;
};

enum class MuConstraint { floor, ceiling };

/// A computed mu-sequence. values[i] holds mu_{i+1}. margins[i] is the signed
/// distance to the hard constraint (mu >= 0 for a floor, (a_n/b_n)^q - mu > 0
/// for a ceiling). A recurrence stops at its first violation, so values may be
/// shorter than the requested length. The optional analytic target (the lower
/// or upper bound an induction proof aims for) is tracked separately and never
/// stops the trace; target_margins is NaN where the target is undefined.
struct MuTrace {
  std::string name;
  MuConstraint constraint = MuConstraint::floor;
  std::size_t requested = 0;
  std::vector<double> values;
  std::vector<double> margins;
  std::optional<std::size_t> first_violation;
  std::string note;

  std::string target_name;
  std::vector<double> target_margins;
  std::optional<std::size_t> first_target_violation;

  [[nodiscard]] bool pass() const { return !first_violation.has_value(); }
  [[nodiscard]] bool target_pass() const { return pass() && !first_target_violation.has_value(); }
  [[nodiscard]] double min_margin() const;
  [[nodiscard]] double min_target_margin() const;
  /// mu_n, 1-based.
  [[nodiscard]] double mu(std::size_t n) const { return values.at(n - 1); }
};

struct CartlidgeScan {
  double L = 0.0;
  std::size_t argmax = 1;       // n attaining the max of Lambda_{n+1}/lambda_{n+1} - Lambda_n/lambda_n
  bool tail_increasing = false; // differences still increasing over the last 10% of indices
};

/// max over n <= N-1 of Lambda_{n+1}/lambda_{n+1} - Lambda_n/lambda_n. Requires N >= 2.
CartlidgeScan cartlidge_scan(const WeightSequence& w);
double cartlidge_L(const WeightSequence& w);

/// Cartlidge's condition as a certificate: L = cartlidge_L(w), pass iff L < p,
/// bound p/(p-L).
CertificateReport check_cartlidge(const WeightSequence& w, double p);

/// Lambda_{n+1}/lambda_{n+1} <= (Lambda_n/lambda_n)(1 - L lambda_n/(p Lambda_n))^{1-p} + L/p.
CertificateReport check_cor12(const WeightSequence& w, double p, double L, const CheckOptions& opt = {});

/// sum_{k<=n} (lambda_k/Lambda_n) prod_{i=k}^{n} ((Lambda_{i+1}/lambda_{i+1} - L/p)/(Lambda_i/lambda_i))^{1/(p-1)}
///   <= p/(p-L).
CertificateReport check_thm11_product(const WeightSequence& w, double p, double L, const CheckOptions& opt = {});

/// Factorable analogue: sum_{k<=n} (b_k/a_n) prod_{i=k}^{n} ((a_i/b_{i+1} + 1 - L/p)/(a_i/b_i))^{1/(p-1)} <= p/(p-L).
/// Requires a normalized spec.
CertificateReport check_thm14_product(const FactorableSpec& spec, double p, double L, const CheckOptions& opt = {});

/// The product-free factorable condition with lambda_p = (1-L/p)^p, checked
/// verbatim for n = 1..N-1. Requires a normalized spec.
CertificateReport check_thm17(const FactorableSpec& spec, double p, double L, const CheckOptions& opt = {});

/// The p = 2 weighted mean condition
/// Lambda_{n+1}/lambda_{n+1} - Lambda_n/lambda_n <= L + (L^2/4)((1+L/2)/(1-L/2)) / (Lambda_{n+1}/lambda_{n+1} + L/2).
CertificateReport check_cor18(const WeightSequence& w, double L, const CheckOptions& opt = {});

/// Primal recurrence: mu_1 = 1,
///   mu_{n+1} = (a_n/b_n)^p mu_n / (mu_n^{1/(p-1)} + (a_{n-1}/b_n)^{p/(p-1)})^{p-1} - lambda_p,  a_0 = 0,
/// with floor mu_n >= 0. Target: mu_n >= s a_{n-1}/b_{n-1} + 1 - lambda_p - s for n >= 2,
/// s = lambda_p^{1-1/p}. Requires p > 1, lambda_p > 0, normalized spec.
MuTrace mu_primal(const FactorableSpec& spec, double p, double lambda_p, std::size_t n);

/// Dual recurrence: mu_1 = U_p^{-q/p},
///   mu_{n+1} = U_p^{-q/p} + (a_n/b_{n+1})^q / ((a_n/b_n)^{q/(q-1)} mu_n^{-1/(q-1)} - 1)^{q-1},
/// with ceiling mu_n < (a_n/b_n)^q. Requires p > 1, U_p > 0, normalized spec.
MuTrace mu_dual(const FactorableSpec& spec, double p, double U_p, std::size_t n);

/// sum_n (M x)_n^p <= U_p sum_n x_n^p on one input, as a ratio lhs/rhs.
double direct_inequality_ratio(const FactorableSpec& spec, double p, double U_p, const std::vector<double>& x);

}  // namespace lpnorm

#endif  // LPNORM_CERTIFICATES_HPP
