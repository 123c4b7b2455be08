#ifndef LPNORM_HLP_HPP
#define LPNORM_HLP_HPP

// The Hardy-Littlewood-Polya inequality
//   sum_n ((1/n) sum_{k>=n} x_k)^p >= C_p sum_n x_n^p,  C_p = (p/(1-p))^p, 0 < p < 1,
// and its dual form  sum_n (sum_{k<=n} x_k/k)^q <= C_p^{q/p} sum_n x_n^q, q = p/(p-1) < 0:
// the two mu-recurrences that certify it, the threshold searches built on
// them, and direct finite-N probes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lpnorm/certificates.hpp"

namespace lpnorm {

/// (p/(1-p))^p
double hlp_constant(double p);

/// mu_1 = ((1-p)/p)^p, mu_{n+1} = (n+1)^p (n^{p/(p-1)} mu_n^{1/(1-p)} - 1)^{1-p} + ((1-p)/p)^p.
/// margins[n-1] = mu_n - n^p; the inner base is positive exactly when this
/// margin is, so the trace stops at the first n with mu_n <= n^p.
/// Target: mu_n >= a n + b, a = (p/(1-p))^{1-p}, b = (1/p-1)^p / 2.
/// Requires 1/3 <= p < 1 (0 < p < 1 accepted), N >= 1.
MuTrace mu_direct(double p, std::size_t n);

/// (a, b) of the linear target.
struct LinearTarget {
  double a = 0.0;
  double b = 0.0;
  [[nodiscard]] double at(std::size_t n) const { return a * static_cast<double>(n) + b; }
};
LinearTarget thm114_target(double p);

struct Thm114Result {
  double p = 0.0;
  std::size_t n_max = 0;
  std::optional<std::size_t> n0;
  double margin = kNaN;  // mu_{n0} - (a n0 + b)
  std::optional<std::size_t> domain_failure;
  MuTrace trace;
};

/// Smallest n0 <= n_max with mu_{n0} >= (a n0 + b)(1 - 1e-12).
Thm114Result thm114_certify(double p, std::size_t n_max = 100000);
/// mu_{n0} - (a n0 + b) for a forced n0 (NaN if the trace stops before n0).
double thm114_margin_at(double p, std::size_t n0);

/// 2^{p/(1-p)}(((1-p)/p)^{1/(1-p)} - (1-p)/p) - (1 + (3-1/p)/2)^{1/(1-p)}.
double check_146(double p);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t iterations = 0;
};
/// Bisects a sign change of check_146 on [lo, hi] down to the given width.
Bracket bracket_146(double lo, double hi, double width = 1e-4);

/// mu_1 = 0, mu_{n+1} = (n^{-p} + mu_n^{1-p})^{1/(1-p)} - (1/p-1)^{p/(p-1)}.
/// margins[n-1] = mu_n for n >= 2 (the positivity constraint; +inf at n = 1).
/// Target (reported, never gating): mu_n > n^p.
MuTrace mu_dual_hlp(double p, std::size_t n);

/// (1/p-1) y + (1+cy)^{1-p} - (1+(c+1/p)y)^{1-p}; NaN outside 1+cy > 0.
double hlp_f(double c, double p, double y);

struct Thm115Report {
  double p = 0.0;
  std::size_t n0 = 0;
  double c = 0.0;
  double margin_mu = kNaN;   // mu_{n0} - (1/p-1)^{1/(p-1)} (n0 + c)
  double margin_c = kNaN;    // c + 1/(2p), must be > 0
  double margin_f = kNaN;    // f_{c,p}(1/n0)
  bool domain_ok = true;     // 1 + c/n0 > 0
  bool feasible = false;
};

Thm115Report thm115_feasible(double p, std::size_t n0, double c);

struct SearchCResult {
  double p = 0.0;
  std::size_t n0_max = 0;
  std::optional<std::size_t> n0;
  double c = kNaN;      // c_max, the largest feasible c at n0
  double c_min = kNaN;  // lower end of the feasible interval at n0
  Thm115Report report;  // thm115_feasible at (n0, c)
};

/// Scans n0 = 1..n0_max for the first n0 whose feasible c-interval is
/// nonempty. f_{c,p}(y) is increasing in c, so feasibility at n0 is decided
/// at c_max = mu_{n0} (1/p-1)^{-1/(p-1)} - n0; c_min is found by 60 bisection
/// steps on (-1/(2p), c_max].
SearchCResult search_c(double p, std::size_t n0_max = 10000);

/// sum_{n<=N} ((1/n) sum_{k=n}^{N} k^{-s})^p / sum_{n<=N} n^{-sp}, divided by nothing:
/// the raw ratio to compare with C_p.
double probe_hlp(double p, double s, std::size_t n);

struct ProbeGridPoint {
  double s = 0.0;
  std::size_t n = 0;
  double ratio = 0.0;
};
/// probe_hlp over the Cartesian grid, parallel over grid points.
std::vector<ProbeGridPoint> probe_hlp_grid(double p, const std::vector<double>& s_values,
                                           const std::vector<std::size_t>& n_values,
                                           Execution exec = Execution::parallel);

/// sum_n (sum_{k<=n} x_k/k)^q / ((p/(1-p))^q sum_n x_n^q), q = p/(p-1); x positive.
double probe_hlp_dual(double p, const std::vector<double>& x);

struct DualTrialReport {
  double p = 0.0;
  std::size_t n = 0;
  std::size_t trials = 0;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  bool pass = true;  // max_ratio <= 1 + 1e-10
};

DualTrialReport hlp_dual_trials(double p, std::size_t n, std::size_t trials, std::uint64_t seed,
                                Execution exec = Execution::parallel, double lo = 1e-3, double hi = 1e3);

}  // namespace lpnorm

#endif  // LPNORM_HLP_HPP
