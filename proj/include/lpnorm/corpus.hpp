#ifndef LPNORM_CORPUS_HPP
#define LPNORM_CORPUS_HPP

// Named certificate dispatch and the weight corpus used to compare two
// certificates instance by instance.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpnorm/certificates.hpp"
#include "lpnorm/weights.hpp"

namespace lpnorm {

enum class Method { cartlidge, cor12, thm11, thm14, thm17, cor18, mu_primal, mu_dual };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

/// Runs one certificate on the weighted mean of w with a fixed L.
/// cartlidge passes iff cartlidge_L(w) <= L; thm14, thm17 and the mu traces
/// use weighted_mean(w); mu traces report their constraint margins.
CertificateReport run_method(Method m, const WeightSequence& w, double p, double L, const CheckOptions& opt = {});

/// Positive weights, monotone, of length n. Even index: nonincreasing,
/// lambda_n = 1 + sum_{k>=n} u_k e^{-rk} with u_k ~ U(0,1) and r ~ U(0.2, 3);
/// odd index: the same construction reversed (nondecreasing).
std::vector<double> random_monotone_weights(std::size_t n, std::uint64_t seed, std::size_t index);

struct CorpusEntry {
  std::string label;
  WeightSequence w;
};

/// constant, power:0.5, power:1, power:2, geometric:1.1, geometric:2 and
/// random_count seeded random-monotone sequences, all of length n.
std::vector<CorpusEntry> standard_corpus(std::size_t n, std::size_t random_count, std::uint64_t seed);

struct CompareInstance {
  std::string label;
  double L = 0.0;
  CertificateReport a;
  CertificateReport b;
  [[nodiscard]] bool differs() const { return a.pass != b.pass; }
};

struct CompareReport {
  std::string method_a;
  std::string method_b;
  double p = 0.0;
  std::vector<CompareInstance> instances;
  /// counts[i][j]: instances with (a passes) == !i and (b passes) == !j.
  std::size_t counts[2][2] = {{0, 0}, {0, 0}};
};

/// Runs both methods on every corpus entry. With a fixed L every entry is
/// checked once; otherwise once per fraction f at L = f * cartlidge_L(w),
/// skipping L >= p.
CompareReport compare_methods(Method a, Method b, const std::vector<CorpusEntry>& corpus, double p,
                              std::optional<double> fixed_L, const std::vector<double>& fractions,
                              const CheckOptions& opt = {});

}  // namespace lpnorm

#endif  // LPNORM_CORPUS_HPP
