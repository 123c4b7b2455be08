#ifndef LPNORM_PARALLEL_HPP
#define LPNORM_PARALLEL_HPP

// Data-parallel kernels shared by the certificate scans and the random trial
// batches. Every OpenMP kernel has a *_serial twin computing the identical
// result; reductions merge (value, index) pairs lexicographically so the
// output does not depend on the thread count or schedule.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <omp.h>

namespace lpnorm {

/// Thread cap from the THREADS environment variable; 0 or unset means the
/// OpenMP default (machine parallelism).
int thread_cap();

/// Applies thread_cap() to the OpenMP runtime. Idempotent.
void apply_thread_cap();

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-trial generator. Seeded from (base seed, trial index) so each trial is
/// reproducible regardless of which thread runs it. mt19937_64's output
/// sequence is fixed by the standard; the real-valued draws below avoid
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(seed ^ splitmix64(trial + 1))) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// exp(U(log lo, log hi)).
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  std::vector<double> log_uniform_vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& e : v) e = log_uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Min-margin scan result over an index range.
struct ScanResult {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  std::optional<std::size_t> first_fail;
};

/// Max-ratio result over a trial batch.
struct TrialMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t trial = 0;
};

namespace detail {

inline double sanitize_margin(double m) { return std::isnan(m) ? -std::numeric_limits<double>::infinity() : m; }

inline void merge(ScanResult& into, const ScanResult& other) {
  if (other.worst < into.worst || (other.worst == into.worst && other.worst_index < into.worst_index)) {
    into.worst = other.worst;
    into.worst_index = other.worst_index;
  }
  if (other.first_fail && (!into.first_fail || *other.first_fail < *into.first_fail)) {
    into.first_fail = other.first_fail;
  }
}

inline void merge(TrialMax& into, const TrialMax& other) {
  if (other.value > into.value || (other.value == into.value && other.trial < into.trial)) into = other;
}

}  // namespace detail

/// Evaluates margin_at(n) for n in [first, last] (inclusive), returning the
/// smallest margin (ties: smallest n) and the smallest n whose margin is below
/// fail_below. NaN margins count as -inf.
template <class MarginFn>
ScanResult scan_min_serial(std::size_t first, std::size_t last, double fail_below, MarginFn&& margin_at) {
  ScanResult out;
  for (std::size_t n = first; n <= last && first <= last; ++n) {
    const double m = detail::sanitize_margin(margin_at(n));
    detail::merge(out, ScanResult{m, n, m < fail_below ? std::optional<std::size_t>(n) : std::nullopt});
  }
  return out;
}

template <class MarginFn>
ScanResult scan_min(std::size_t first, std::size_t last, double fail_below, MarginFn&& margin_at) {
  ScanResult out;
  if (first > last) return out;
  const auto count = static_cast<std::int64_t>(last - first + 1);
  if (count < 4096) return scan_min_serial(first, last, fail_below, margin_at);
  apply_thread_cap();
#pragma omp parallel
  {
    ScanResult local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const std::size_t n = first + static_cast<std::size_t>(i);
      const double m = detail::sanitize_margin(margin_at(n));
      detail::merge(local, ScanResult{m, n, m < fail_below ? std::optional<std::size_t>(n) : std::nullopt});
    }
#pragma omp critical(lpnorm_scan_merge)
    detail::merge(out, local);
  }
  return out;
}

/// max over t < trials of ratio_of(t, rng_t), rng_t = TrialRng(seed, t).
/// NaN ratios count as +inf so they surface as violations.
template <class TrialFn>
TrialMax max_over_trials_serial(std::size_t trials, std::uint64_t seed, TrialFn&& ratio_of) {
  TrialMax out;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(seed, t);
    double r = ratio_of(t, rng);
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    detail::merge(out, TrialMax{r, t});
  }
  return out;
}

template <class TrialFn>
TrialMax max_over_trials(std::size_t trials, std::uint64_t seed, TrialFn&& ratio_of) {
  TrialMax out;
  if (trials == 0) return out;
  apply_thread_cap();
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    TrialMax local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const auto t = static_cast<std::size_t>(i);
      TrialRng rng(seed, t);
      double r = ratio_of(t, rng);
      if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
      detail::merge(local, TrialMax{r, t});
    }
#pragma omp critical(lpnorm_trial_merge)
    detail::merge(out, local);
  }
  return out;
}

}  // namespace lpnorm

#endif  // LPNORM_PARALLEL_HPP
