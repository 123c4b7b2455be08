#include "lpnorm/numeric.hpp"

#include <algorithm>
#include <cstdlib>

#include "lpnorm/parallel.hpp"

namespace lpnorm {

void LogSumExp::add(double log_term) {
  if (log_term == -kInf) return;
  if (std::isnan(log_term)) {
    max_ = kNaN;
    return;
  }
  if (log_term <= max_) {
    scaled_ += std::exp(log_term - max_);
  } else {
    scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

double LogSumExp::value() const {
  if (std::isnan(max_)) return kNaN;
  if (max_ == -kInf) return -kInf;
  return max_ + std::log(scaled_);
}

double log_power_sum(std::span<const double> v, double e) {
  LogSumExp acc;
  for (double x : v) acc.add(e * std::log(x));
  return acc.value();
}

double log_weighted_power_sum(std::span<const double> w, std::span<const double> v, double e) {
  LogSumExp acc;
  for (std::size_t i = 0; i < v.size(); ++i) acc.add(std::log(w[i]) + e * std::log(v[i]));
  return acc.value();
}

double relative_margin(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return -kInf;
  if (lhs == rhs) return 0.0;
  const double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
  return (rhs - lhs) / scale;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

int thread_cap() {
  const char* env = std::getenv("THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 0;
  return static_cast<int>(v);
}

void apply_thread_cap() {
  static const int cap = [] {
    const int c = thread_cap();
    if (c > 0) omp_set_num_threads(c);
    return c;
  }();
  (void)cap;
}

}  // namespace lpnorm
