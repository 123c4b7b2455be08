#include "lpnorm/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "lpnorm/factorable.hpp"
#include "lpnorm/parallel.hpp"

namespace lpnorm {

namespace {

constexpr Method kMethods[] = {Method::cartlidge, Method::cor12,  Method::thm11,     Method::thm14,
                               Method::thm17,     Method::cor18,  Method::mu_primal, Method::mu_dual};

CertificateReport from_trace(std::string method, const BoundParams& params, const MuTrace& t) {
  CertificateReport r;
  r.method = std::move(method);
  r.params = params;
  r.n = t.requested;
  r.bound = params.bound();
  r.pass = t.pass();
  r.first_fail = t.first_violation;
  r.worst_margin = t.min_margin();
  const auto it = std::min_element(t.margins.begin(), t.margins.end());
  r.worst_index = it == t.margins.end() ? 0 : static_cast<std::size_t>(it - t.margins.begin()) + 1;
  r.note = t.note;
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::cartlidge: return "cartlidge";
    case Method::cor12: return "cor12";
    case Method::thm11: return "thm11";
    case Method::thm14: return "thm14";
    case Method::thm17: return "thm17";
    case Method::cor18: return "cor18";
    case Method::mu_primal: return "mu_primal";
    case Method::mu_dual: return "mu_dual";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  for (auto m : kMethods) {
    if (text == to_string(m)) return m;
  }
  throw DomainError("unknown method '" + std::string(text) +
                    "' (cartlidge, cor12, thm11, thm14, thm17, cor18, mu_primal, mu_dual)");
}

CertificateReport run_method(Method m, const WeightSequence& w, double p, double L, const CheckOptions& opt) {
  switch (m) {
    case Method::cartlidge: {
      const auto params = make_bound_params(p, L);
      const auto scan = cartlidge_scan(w);
      CertificateReport r;
      r.method = "cartlidge";
      r.params = params;
      r.n = w.size();
      r.bound = params.bound();
      r.worst_margin = relative_margin(scan.L, L);
      r.worst_index = scan.argmax;
      r.pass = r.worst_margin >= -opt.tol;
      if (!r.pass) r.first_fail = scan.argmax;
      if (scan.tail_increasing) r.note = "differences still increasing at the truncation; the sup may exceed L";
      return r;
    }
    case Method::cor12: return check_cor12(w, p, L, opt);
    case Method::thm11: return check_thm11_product(w, p, L, opt);
    case Method::thm14: return check_thm14_product(weighted_mean(w), p, L, opt);
    case Method::thm17: return check_thm17(weighted_mean(w), p, L, opt);
    case Method::cor18:
      require(p == 2.0, "cor18 is the p = 2 condition");
      return check_cor18(w, L, opt);
    case Method::mu_primal: {
      const auto params = make_bound_params(p, L);
      return from_trace("mu_primal", params, mu_primal(weighted_mean(w), p, params.lambda_p, w.size()));
    }
    case Method::mu_dual: {
      const auto params = make_bound_params(p, L);
      return from_trace("mu_dual", params, mu_dual(weighted_mean(w), p, params.U_p, w.size()));
    }
  }
  throw DomainError("unknown method");
}

std::vector<double> random_monotone_weights(std::size_t n, std::uint64_t seed, std::size_t index) {
  require(n >= 1, "weight length must be at least 1");
  TrialRng rng(seed, index);
  const double rate = rng.uniform(0.2, 3.0);
  std::vector<double> lam(n);
  double tail = 0.0;
  for (std::size_t k = n; k >= 1; --k) {
    tail += rng.uniform() * std::exp(-rate * static_cast<double>(k - 1));
    lam[k - 1] = 1.0 + tail;
  }
  if (index % 2 == 1) std::reverse(lam.begin(), lam.end());
  return lam;
}

std::vector<CorpusEntry> standard_corpus(std::size_t n, std::size_t random_count, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  for (const char* text : {"constant", "power:0.5", "power:1", "power:2", "geometric:1.1", "geometric:2"}) {
    out.push_back({text, build_weights(WeightSpec::parse(text), n)});
  }
  for (std::size_t i = 0; i < random_count; ++i) {
    auto lam = random_monotone_weights(n, seed, i);
    out.push_back({"random:" + std::to_string(i), build_weights(WeightSpec::list(std::move(lam)), n)});
  }
  return out;
}

CompareReport compare_methods(Method a, Method b, const std::vector<CorpusEntry>& corpus, double p,
                              std::optional<double> fixed_L, const std::vector<double>& fractions,
                              const CheckOptions& opt) {
  CompareReport rep;
  rep.method_a = std::string(to_string(a));
  rep.method_b = std::string(to_string(b));
  rep.p = p;
  for (const auto& entry : corpus) {
    std::vector<double> Ls;
    if (fixed_L) {
      Ls.push_back(*fixed_L);
    } else {
      const double base = cartlidge_L(entry.w);
      for (double f : fractions) {
        const double L = f * base;
        if (L > 0.0 && L < p) Ls.push_back(L);
      }
    }
    for (double L : Ls) {
      CompareInstance inst{entry.label, L, run_method(a, entry.w, p, L, opt), run_method(b, entry.w, p, L, opt)};
      ++rep.counts[inst.a.pass ? 0 : 1][inst.b.pass ? 0 : 1];
      rep.instances.push_back(std::move(inst));
    }
  }
  return rep;
}

}  // namespace lpnorm
