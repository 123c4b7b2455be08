#ifndef LPNORM_COPSON_HPP
#define LPNORM_COPSON_HPP

// Copson, Leindler and Bennett/Grosse-Erdmann inequalities: the c_p root and
// the admissible-c threshold, the scalar inequality behind it, randomized
// two-sided evaluations at a truncation N, and the mu-recurrence routes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpnorm/certificates.hpp"
#include "lpnorm/weights.hpp"

namespace lpnorm {

/// The four Copson/Leindler forms, named after their usual labels.
///   b11: sum lam_n Lam_n^{p-c} A_n^p            <= (p/(c-1))^p sum lam_n Lam_n^{p-c} x_n^p,  c > 1
///   b12: sum lam_n Lam_n^{p-c} (T_n/Lam_n)^p     <= (p/(1-c))^p sum lam_n Lam_n^{p-c} x_n^p,  0 <= c < 1
///   b13: sum lam_n Lam*_n^{p-c} (S_n/Lam*_n)^p   <= (p/(1-c))^p sum lam_n Lam*_n^{p-c} x_n^p, 0 <= c < 1
///   b14: sum lam_n Lam*_n^{p-c} (T_n/Lam*_n)^p   <= (p/(c-1))^p sum lam_n Lam*_n^{p-c} x_n^p, c > 1
/// with S_n = sum_{k<=n} lam_k x_k, T_n = sum_{n<=k<=N} lam_k x_k.
enum class CopsonBranch { b11, b12, b13, b14 };

std::string_view to_string(CopsonBranch b);
/// Accepts "1.1'", "1.1", "b11" and the like.
CopsonBranch parse_copson_branch(std::string_view text);
/// log of the branch constant; throws DomainError outside the branch's c range.
double copson_log_constant(CopsonBranch b, double p, double c);

struct RootResult {
  double c_p = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// The negative root of g(c) = (1 + (1-c)/p)^{1-p} - (1-c)/p, p > 1.
RootResult solve_cp(double p);
double cp_equation(double p, double c);
/// p - (p-1) c_q with q = p/(p-1).
double thm15_threshold(double p);
bool thm15_admissible(double p, double c);

struct Ineq36Report {
  double p = 0.0;
  double c = 0.0;
  std::size_t grid = 0;
  double min_margin = kInf;  // min over (0,1] of rhs - lhs
  double argmin = 0.0;
  bool pass = true;
};

/// rhs(y) - lhs(y) of 1 + ((c-1)/p) y <= (((c-1)/p) y + (1-y)^{(c-1)/(p-1)})^{1-p}.
double ineq36_margin(double p, double c, double y);
/// Uniform grid on [0,1] followed by golden-section refinement around the
/// smallest margin. Passes when min_margin >= -1e-12.
Ineq36Report check_ineq_36prime(double p, double c, std::size_t grid = 4096);

struct CopsonReport {
  std::string branch;
  double p = 0.0;
  double c_or_alpha = 0.0;
  std::size_t n = 0;
  std::size_t trials = 0;
  double max_ratio = 0.0;
  double min_margin = kInf;  // 1 - max_ratio
  std::size_t argmin = 0;    // trial attaining max_ratio
  bool pass = true;          // max_ratio <= 1 + kRatioTol
};

/// LHS / (constant * RHS) for one positive x of length w.size().
double copson_ratio(const WeightSequence& w, double p, double c, CopsonBranch branch, const std::vector<double>& x);

/// Maps x to z_n = lam_n^{1/p} Lam_n^{(p-c)/p} x_n, under which the b11 form
/// becomes the factorable inequality for copson_matrix(w, p, c).
std::vector<double> copson_substitution(const WeightSequence& w, double p, double c, const std::vector<double>& x);

struct TrialOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double lo = 1e-3;
  double hi = 1e3;
  Execution exec = Execution::parallel;
};

CopsonReport check_copson_numeric(const WeightSequence& w, double p, double c, CopsonBranch branch,
                                  const TrialOptions& opt = {});

struct ProbePoint {
  std::size_t n = 0;
  double ratio = 0.0;
};

/// b11 ratio at x_n = n^{-1/p - offset}.
double copson_probe(const WeightSequence& w, double p, double c, double offset = 0.01);
/// copson_probe on truncations N = n_start, 2 n_start, ... (the last point is w.size()).
std::vector<ProbePoint> copson_probe_schedule(const WeightSequence& w, double p, double c, std::size_t n_start,
                                              double offset = 0.01);

/// sum lam_n (sum_{k>=n} Lam_k^a x_k)^p / ((a p + 1)^p sum lam_n Lam_n^{a p} (sum_{k>=n} x_k)^p).
double bge_ratio(const WeightSequence& w, double p, double alpha, const std::vector<double>& x);
CopsonReport check_bge(const WeightSequence& w, double p, double alpha, const TrialOptions& opt = {});
/// alpha >= 1 - 1/(2p).
bool thm16_admissible(double p, double alpha);

/// Dual recurrence on copson_matrix(w, p, c) with U_p = (p/(c-1))^p and target
/// mu_n <= (Lam_n/lam_n)(lam_n/Lam_n + a)^{1-q}, a = p/(c-1).
MuTrace mu_dual_copson(const WeightSequence& w, double p, double c, std::size_t n);

enum class BgeRoute { dual, primal };
/// BGE recurrences on bge_matrix(w, p, alpha), U_p = (alpha p/(p-1))^p.
///   dual:   ceiling mu_n < (1 - (Lam_{n-1}/Lam_n)^alpha)^{-q}, target
///           mu_n <= ((1-(Lam_{n-1}/Lam_n)^alpha)^{q/(q-1)} + (a lam_n/Lam_n)^{1/(q-1)})^{1-q}, a = alpha^q q^{q-1}
///   primal: floor mu_n >= 0, target for n >= 2
///           mu_n >= y^{p-1} / (a^{p-1} (1 - (1-y)^alpha)^p), y = lam_{n-1}/Lam_{n-1}, a = p/(p-1)
MuTrace mu_bge(const WeightSequence& w, double p, double alpha, std::size_t n, BgeRoute route);

}  // namespace lpnorm

#endif  // LPNORM_COPSON_HPP
