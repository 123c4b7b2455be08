#include "lpnorm/weights.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lpnorm/numeric.hpp"

namespace lpnorm {

namespace {

double parse_double(std::string_view text, const std::string& context) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw DomainError(context + ": not a number: '" + std::string(text) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant: return "constant";
    case WeightKind::power: return "power";
    case WeightKind::geometric: return "geometric";
    case WeightKind::explicit_list: return "list";
  }
  return "?";
}

WeightSpec WeightSpec::constant() { return {WeightKind::constant, 0.0, {}, "constant"}; }

WeightSpec WeightSpec::power(double exponent) {
  return {WeightKind::power, exponent, {}, "power:" + format_param(exponent)};
}

WeightSpec WeightSpec::geometric(double ratio) {
  return {WeightKind::geometric, ratio, {}, "geometric:" + format_param(ratio)};
}

WeightSpec WeightSpec::list(std::vector<double> values, std::string label) {
  return {WeightKind::explicit_list, 0.0, std::move(values), std::move(label)};
}

WeightSpec WeightSpec::parse(std::string_view text) {
  if (text == "constant") return constant();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("unknown weight spec '" + std::string(text) + "'");
  const auto head = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (head == "power") return power(parse_double(arg, "power exponent"));
  if (head == "geometric") return geometric(parse_double(arg, "geometric ratio"));
  if (head == "file") {
    auto spec = list(read_weight_file(std::filesystem::path(std::string(arg))), std::string(text));
    return spec;
  }
  throw DomainError("unknown weight spec '" + std::string(text) + "'");
}

WeightSequence::WeightSequence(WeightKind kind, double param, std::vector<double> values)
    : kind_(kind), param_(param), values_(std::move(values)) {
  require(!values_.empty(), "weight sequence must have N >= 1");
  const std::size_t n = values_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("weight " + std::to_string(i + 1) + " is not a positive finite number");
    }
  }
  partial_.assign(n + 1, 0.0);
  CompensatedSum forward;
  for (std::size_t i = 0; i < n; ++i) {
    forward.add(values_[i]);
    partial_[i + 1] = forward.value();
  }
  tail_.assign(n + 2, 0.0);
  CompensatedSum backward;
  for (std::size_t i = n; i >= 1; --i) {
    backward.add(values_[i - 1]);
    tail_[i] = backward.value();
  }
  if (!std::isfinite(partial_[n])) throw DomainError("weight partial sums overflow");
}

WeightSequence WeightSequence::truncated(std::size_t n) const {
  require(n >= 1 && n <= size(), "truncation must satisfy 1 <= n <= N");
  return WeightSequence(kind_, param_, std::vector<double>(values_.begin(), values_.begin() + static_cast<long>(n)));
}

WeightSequence build_weights(const WeightSpec& spec, std::size_t n) {
  require(n >= 1, "N must be at least 1");
  std::vector<double> v(n);
  switch (spec.kind) {
    case WeightKind::constant:
      std::fill(v.begin(), v.end(), 1.0);
      break;
    case WeightKind::power:
      require(spec.param > -1.0, "power exponent must exceed -1");
      for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(static_cast<double>(i + 1), spec.param);
      break;
    case WeightKind::geometric:
      require(spec.param > 0.0, "geometric ratio must be positive");
      for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(spec.param, static_cast<double>(i + 1));
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v[i]) || v[i] == 0.0) {
          throw DomainError("geometric weights r^n leave the double range at n = " + std::to_string(i + 1));
        }
      }
      break;
    case WeightKind::explicit_list:
      require(spec.values.size() >= n, "explicit weight list has " + std::to_string(spec.values.size()) +
                                           " entries, N = " + std::to_string(n) + " requested");
      v.assign(spec.values.begin(), spec.values.begin() + static_cast<long>(n));
      break;
  }
  return WeightSequence(spec.kind, spec.param, std::move(v));
}

std::vector<double> parse_weight_text(std::string_view text) {
  std::vector<double> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const double v = parse_double(line, "weight file line " + std::to_string(line_no));
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("weight file line " + std::to_string(line_no) + ": weight must be positive");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("weight file contains no weights");
  return out;
}

std::vector<double> read_weight_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open weight file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_weight_text(buf.str());
}

namespace detail {

AveragesBundle averages_unchecked(const WeightSequence& w, std::span<const double> x) {
  const std::size_t n = w.size();
  AveragesBundle out;
  out.x.assign(x.begin(), x.end());
  out.forward.resize(n);
  out.transpose.resize(n);
  out.tail.resize(n);
  out.tail_transpose.resize(n);

  CompensatedSum fwd;
  CompensatedSum fwd_star;
  for (std::size_t k = 1; k <= n; ++k) {
    fwd.add(w.lambda(k) * x[k - 1]);
    out.forward[k - 1] = fwd.value() / w.partial(k);
    fwd_star.add(x[k - 1] / w.tail(k));
    out.tail_transpose[k - 1] = w.lambda(k) * fwd_star.value();
  }
  CompensatedSum bwd;
  CompensatedSum bwd_star;
  for (std::size_t k = n; k >= 1; --k) {
    bwd.add(x[k - 1] / w.partial(k));
    out.transpose[k - 1] = w.lambda(k) * bwd.value();
    bwd_star.add(w.lambda(k) * x[k - 1]);
    out.tail[k - 1] = bwd_star.value() / w.tail(k);
  }
  return out;
}

}  // namespace detail

AveragesBundle averages(const WeightSequence& w, std::span<const double> x) {
  require(x.size() == w.size(), "x has length " + std::to_string(x.size()) + ", weights have N = " +
                                    std::to_string(w.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw DomainError("x entry " + std::to_string(i + 1) + " is not positive");
    }
  }
  return detail::averages_unchecked(w, x);
}

}  // namespace lpnorm
