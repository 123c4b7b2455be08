#ifndef LPNORM_WEIGHTS_HPP
#define LPNORM_WEIGHTS_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpnorm {

enum class WeightKind { constant, power, geometric, explicit_list };

std::string_view to_string(WeightKind kind);

/// How to generate a weight sequence: a family with its parameter, or an
/// explicit list of values.
struct WeightSpec {
  WeightKind kind = WeightKind::constant;
  double param = 0.0;           // power exponent a, or geometric ratio r
  std::vector<double> values;   // explicit_list only
  std::string label;            // provenance for reports ("constant", "power:1", "file:w.txt")

  static WeightSpec constant();
  static WeightSpec power(double exponent);
  static WeightSpec geometric(double ratio);
  static WeightSpec list(std::vector<double> values, std::string label = "list");

  /// Parses "constant", "power:A", "geometric:R" or "file:PATH".
  static WeightSpec parse(std::string_view text);
};

/// Positive weights lambda_1..lambda_N with partial sums Lambda_n and tails
/// Lambda*_n truncated at N. All indices in the accessors are 1-based, matching
/// the usual notation; partial(0) == 0 and tail(N + 1) == 0.
class WeightSequence {
 public:
  WeightSequence(WeightKind kind, double param, std::vector<double> values);

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] WeightKind kind() const { return kind_; }
  [[nodiscard]] double param() const { return param_; }

  [[nodiscard]] double lambda(std::size_t n) const { return values_[n - 1]; }
  [[nodiscard]] double partial(std::size_t n) const { return partial_[n]; }
  [[nodiscard]] double tail(std::size_t n) const { return tail_[n]; }
  /// Lambda_n / lambda_n.
  [[nodiscard]] double partial_ratio(std::size_t n) const { return partial_[n] / values_[n - 1]; }
  /// Lambda*_n / lambda_n.
  [[nodiscard]] double tail_ratio(std::size_t n) const { return tail_[n] / values_[n - 1]; }

  [[nodiscard]] std::span<const double> values() const { return values_; }
  /// Lambda_1..Lambda_N.
  [[nodiscard]] std::span<const double> partials() const { return std::span<const double>(partial_).subspan(1); }
  /// Lambda*_1..Lambda*_N.
  [[nodiscard]] std::span<const double> tails() const {
    return std::span<const double>(tail_).subspan(1, values_.size());
  }

  /// First n weights, with tails re-truncated at n.
  [[nodiscard]] WeightSequence truncated(std::size_t n) const;

 private:
  WeightKind kind_;
  double param_;
  std::vector<double> values_;
  std::vector<double> partial_;  // size N + 1, partial_[0] = 0
  std::vector<double> tail_;     // size N + 2, tail_[N + 1] = 0
};

WeightSequence build_weights(const WeightSpec& spec, std::size_t n);

/// Reads a weight list: one positive decimal per line, '#' starts a comment
/// line, blank lines ignored. Throws DomainError with the offending line.
std::vector<double> read_weight_file(const std::filesystem::path& path);
std::vector<double> parse_weight_text(std::string_view text);

/// The four averaging sequences attached to a weight sequence and an input x,
/// tails truncated at N:
///   forward[n]          = sum_{k<=n} lambda_k x_k / Lambda_n
///   transpose[n]        = lambda_n sum_{k>=n} x_k / Lambda_k
///   tail[n]             = sum_{k>=n} lambda_k x_k / Lambda*_n
///   tail_transpose[n]   = lambda_n sum_{k<=n} x_k / Lambda*_k
/// Vectors are 0-based (entry n-1 holds index n).
struct AveragesBundle {
  std::vector<double> x;
  std::vector<double> forward;
  std::vector<double> transpose;
  std::vector<double> tail;
  std::vector<double> tail_transpose;
};

/// Requires x.size() == w.size() and x strictly positive.
AveragesBundle averages(const WeightSequence& w, std::span<const double> x);

namespace detail {
/// Same as averages() but accepts nonnegative x; used by inequality
/// evaluators that probe spike profiles.
AveragesBundle averages_unchecked(const WeightSequence& w, std::span<const double> x);
}  // namespace detail

}  // namespace lpnorm

#endif  // LPNORM_WEIGHTS_HPP
