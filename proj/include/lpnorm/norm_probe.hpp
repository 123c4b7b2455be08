#ifndef LPNORM_NORM_PROBE_HPP
#define LPNORM_NORM_PROBE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lpnorm/factorable.hpp"

namespace lpnorm {

struct NormEstimate {
  std::size_t n = 0;
  double p = 0.0;
  double lower_bound = 0.0;   // max over iterates of ||Mx||_p / ||x||_p
  std::size_t iterations = 0;
  double residual = 0.0;      // relative change of the ratio in the last step
  bool converged = false;
  std::vector<double> history;  // ratio after each iteration (index 0 = initial iterate)
};

struct PowerOptions {
  std::size_t max_iter = 10000;
  double tol = 1e-10;
  /// Initial iterate x_n = n^{-1/p - offset}.
  double start_offset = 0.01;
};

/// Lower bound for the l^p -> l^p norm of the truncated operator by the
/// nonlinear power iteration for nonnegative matrices:
///   y = Mx, z = y^{p-1}, u = M^T z, x <- u^{1/(p-1)}, ||x||_p = 1.
/// Every ratio evaluated is a valid lower bound; the maximum is returned.
/// Throws NumericalError if an iterate stops being finite.
NormEstimate power_lower_bound(const FactorableSpec& spec, double p, const PowerOptions& options = {});

/// (sum y_n^p / sum x_n^p)^{1/p} with y = multiply(spec, x). Valid for any
/// p != 0 (for p < 0 every entry of x must be positive).
double ratio_at(const FactorableSpec& spec, double p, std::span<const double> x);

}  // namespace lpnorm

#endif  // LPNORM_NORM_PROBE_HPP
