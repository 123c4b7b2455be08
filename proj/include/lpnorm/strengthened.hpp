#ifndef LPNORM_STRENGTHENED_HPP
#define LPNORM_STRENGTHENED_HPP

// First-power ("strengthened") forms  sum w_n B_n^p <= K sum w_n x_n B_n^{p-1}
// evaluated at a truncation N, together with their p-th power corollaries
// sum w_n B_n^p <= K^p sum w_n x_n^p, and the explicit mu-choices whose
// per-index inequalities imply them.
//
//   case   B_n                              w_n                  K
//   1.40   A_n                              1                    p/(p-L)
//   1.8'   A*_n                             1                    p/(p-L')
//   1.07   A^T_n                            1                    p/(p-(p-1)L)
//   1.9'   (A*_n)^T                         1                    p/(p-(p-1)L')
//   1.8    A_n                              lam_n Lam_n^{p-c}    p/(c-1)
//   1.90   (1/Lam_n) sum_{k>=n} lam_k x_k   lam_n Lam_n^{p-c}    p/(1-c)
//   1.10   (1/Lam*_n) sum_{k<=n} lam_k x_k  lam_n Lam*_n^{p-c}   p/(1-c)
//   1.11   A*_n                             lam_n Lam*_n^{p-c}   p/(c-1)
//
// Tails are truncated at N.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lpnorm/certificates.hpp"
#include "lpnorm/weights.hpp"

namespace lpnorm {

enum class StrengthenedKind { s140, s8prime, s107, s9prime, s18, s190, s110, s111 };

std::string_view to_string(StrengthenedKind k);
StrengthenedKind parse_strengthened_kind(std::string_view text);
std::vector<StrengthenedKind> all_strengthened_kinds();

struct StrengthenedCase {
  StrengthenedKind which = StrengthenedKind::s140;
  double p = 2.0;
  double c = kNaN;  // for 1.8, 1.90, 1.10, 1.11
  double L = kNaN;  // L or L'; NaN means cartlidge_L / tail_L_prime of the weights
};

/// True for the cases parameterized by L (or L').
bool uses_L(StrengthenedKind k);
/// Uses the tail condition L' rather than L.
bool uses_tail_L(StrengthenedKind k);

/// Fills a NaN L from the weights and validates the parameter domain; the
/// returned case has every applicable field set.
StrengthenedCase resolve_case(const StrengthenedCase& sc, const WeightSequence& w);
/// The constant K of the first-power form.
double strengthened_constant(const StrengthenedCase& resolved);

struct StrengthenedRatios {
  double first_power = 0.0;  // lhs / (K sum w x B^{p-1})
  double holder = 0.0;       // lhs / (K^p sum w x^p)
};

/// One positive x of length N; sc must be resolved.
StrengthenedRatios strengthened_ratios(const StrengthenedCase& sc, const WeightSequence& w,
                                       const std::vector<double>& x);

struct StrengthenedReport {
  std::string which;
  double p = 0.0;
  double c = kNaN;
  double L = kNaN;
  double constant = 0.0;
  std::size_t n = 0;
  std::size_t trials = 0;  // random trials; deterministic profiles come on top
  double max_ratio = 0.0;
  double max_holder_ratio = 0.0;
  double min_margin = kInf;  // 1 - max_ratio
  std::string worst;         // "flat", "spike:<n>", "power:<s>" or "random:<t>"
  bool pass = true;          // first-power ratio <= 1 + 1e-10
  bool holder_pass = true;
};

struct StrengthenedOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  double lo = 1e-3;
  double hi = 1e3;
  Execution exec = Execution::parallel;
};

/// Deterministic profiles (flat, spikes at 1, N/2, N, n^{-s}) plus seeded
/// log-uniform trials.
StrengthenedReport check_strengthened(const StrengthenedCase& sc, const WeightSequence& w,
                                      const StrengthenedOptions& opt = {});

/// max over n <= N-1 of Lam*_n/lam_n - Lam*_{n+1}/lam_{n+1}. Requires N >= 2.
double tail_L_prime(const WeightSequence& w);

enum class MuChoice { cartlidge, copson_18, leindler_110, dual_107 };

std::string_view to_string(MuChoice m);
MuChoice parse_mu_choice(std::string_view text);

/// Rounding allowance relative to the cancelling terms.
inline constexpr double kCancellationRel = 16.0 * std::numeric_limits<double>::epsilon();

struct MuChoiceReport {
  std::string which;
  double p = 0.0;
  double param = 0.0;       // L for cartlidge / dual_1.07, c otherwise
  std::size_t n = 0;
  double required = 0.0;    // right-hand side of the per-index inequality
  double min_lhs = kInf;
  double min_margin = kInf; // lhs_n - required at argmin
  double rounding = 0.0;    // rounding bound of lhs at argmin (head - tail cancels)
  std::size_t argmin = 0;   // minimizes lhs_n - required + rounding_n
  bool feasible = true;     // mu_n < 1 where required
  std::size_t first_infeasible = 0;
  double identity_error = 0.0;  // max relative error of the closed form built into the choice
  bool pass() const {
    return feasible && min_margin + rounding >= -kConditionTol * std::max(1.0, std::abs(required));
  }
};

/// Evaluates the per-index sufficient inequality for one explicit mu choice:
///   cartlidge     mu_n = 1/p + (1-1/p) lam_n/Lam_n,
///                 p Lam_n mu_n/lam_n - (1-mu_{n+1})^{1-p}(1-1/p)^{p-1}(Lam_n/Lam_{n+1})^p Lam_{n+1}/lam_{n+1} >= p - L
///   copson_1.8    mu_n = 1 - (1-1/p)(1 - lam_n/Lam_n)^{(c-1)/(p-1)},
///                 p Lam_n mu_n/lam_n - (1-mu_{n+1})^{1-p}(1-1/p)^{p-1}(Lam_n/Lam_{n+1})^c Lam_{n+1}/lam_n >= c - 1
///   leindler_1.10 mu_n = 1/p, the same expression with Lam* in place of Lam, >= 1 - c
///   dual_1.07     mu_n = 1 - (1-1/p) lam_n/lam_{n+1},
///                 p Lam_n mu_n/lam_n - (1-mu_{n-1})^{1-p}(1-1/p)^{p-1}(lam_{n-1}/lam_n)^p Lam_{n-1}/lam_{n-1} >= p - (p-1)L
///                 (n = 1: p mu_1 >= p - (p-1)L)
/// The identity checked is the one each choice is built around: the closed
/// forms p - d_n (cartlidge), Lam_n/lam_n (copson_1.8),
/// (Lam*_n/lam_n)(1 - (1 - lam_n/Lam*_n)^{1-c}) (leindler_1.10) and
/// Lam_{n-1}/lam_n (dual_1.07).
MuChoiceReport verify_mu_choice(MuChoice which, const WeightSequence& w, double p, double param);

}  // namespace lpnorm

#endif  // LPNORM_STRENGTHENED_HPP
