#include <doctest.h>

#include <cmath>

#include "lpnorm/certificates.hpp"
#include "lpnorm/parallel.hpp"
#include "lpnorm/strengthened.hpp"
#include "oracle.hpp"

using namespace lpnorm;

namespace {

WeightSequence weights(const char* text, std::size_t n) { return build_weights(WeightSpec::parse(text), n); }

using oracle::Real;
using oracle::Vec;

struct Pair {
  Real first_power;
  Real holder;
};

// Direct O(N^2) evaluation of every form in the table of strengthened.hpp.
Pair direct(StrengthenedKind k, const Vec& lam, Real p, Real param, const Vec& x) {
  const std::size_t N = lam.size();
  const Vec Lam = oracle::prefix(lam), Tail = oracle::suffix(lam);
  Real lhs = 0, fp = 0, hp = 0, K = 0;
  for (std::size_t n = 0; n < N; ++n) {
    Real S = 0, T = 0, AT = 0, TT = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      S += lam[j] * x[j];
      TT += x[j] / Tail[j];
    }
    for (std::size_t j = n; j < N; ++j) {
      T += lam[j] * x[j];
      AT += x[j] / Lam[j];
    }
    Real B = 0, w = 1;
    switch (k) {
      case StrengthenedKind::s140: B = S / Lam[n]; K = p / (p - param); break;
      case StrengthenedKind::s8prime: B = T / Tail[n]; K = p / (p - param); break;
      case StrengthenedKind::s107: B = lam[n] * AT; K = p / (p - (p - 1) * param); break;
      case StrengthenedKind::s9prime: B = lam[n] * TT; K = p / (p - (p - 1) * param); break;
      case StrengthenedKind::s18: B = S / Lam[n]; w = lam[n] * std::pow(Lam[n], p - param); K = p / (param - 1); break;
      case StrengthenedKind::s190: B = T / Lam[n]; w = lam[n] * std::pow(Lam[n], p - param); K = p / (1 - param); break;
      case StrengthenedKind::s110: B = S / Tail[n]; w = lam[n] * std::pow(Tail[n], p - param); K = p / (1 - param); break;
      case StrengthenedKind::s111: B = T / Tail[n]; w = lam[n] * std::pow(Tail[n], p - param); K = p / (param - 1); break;
    }
    lhs += w * std::pow(B, p);
    fp += w * x[n] * std::pow(B, p - 1);
    hp += w * std::pow(x[n], p);
  }
  return {lhs / (K * fp), lhs / (std::pow(K, p) * hp)};
}

}  // namespace

TEST_SUITE("strengthened") {

TEST_CASE("case names") {
  CHECK(all_strengthened_kinds().size() == 8);
  for (auto k : all_strengthened_kinds()) CHECK(parse_strengthened_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_strengthened_kind("1.99"), DomainError);
  CHECK(uses_L(StrengthenedKind::s140));
  CHECK_FALSE(uses_L(StrengthenedKind::s18));
  CHECK(uses_tail_L(StrengthenedKind::s9prime));
  CHECK_FALSE(uses_tail_L(StrengthenedKind::s107));
}

TEST_CASE("tail L prime") {
  CHECK(tail_L_prime(weights("constant", 1000)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tail_L_prime(weights("constant", 2)) == doctest::Approx(1.0));
  // r = 1/2: Lam*_n/lam_n = 2 - 2^{n-N}, differences 2^{n-N}; r = 2 grows like 2^{N-n}
  CHECK(tail_L_prime(weights("geometric:0.5", 40)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tail_L_prime(weights("geometric:2", 40)) > 1e11);
  // power weights: the first difference is already at least p for p = 2
  CHECK(tail_L_prime(weights("power:1", 200)) >= 2.0);
  CHECK_THROWS_AS(tail_L_prime(weights("constant", 1)), DomainError);
}

TEST_CASE("flat input for the Cartlidge form") {
  const auto w = weights("constant", 100);
  StrengthenedCase sc;
  sc.which = StrengthenedKind::s140;
  const auto r = resolve_case(sc, w);
  CHECK(r.L == 1.0);
  CHECK(strengthened_constant(r) == doctest::Approx(2.0));
  const auto rat = strengthened_ratios(r, w, std::vector<double>(100, 1.0));
  CHECK(rat.first_power == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rat.holder == doctest::Approx(0.25).epsilon(1e-14));
  sc.p = 3.0;
  const auto r3 = resolve_case(sc, w);
  CHECK(strengthened_ratios(r3, w, std::vector<double>(100, 1.0)).first_power == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("ratios match direct sums") {
  struct Case {
    StrengthenedKind k;
    double param;
  };
  const Case cases[] = {{StrengthenedKind::s140, 1.0}, {StrengthenedKind::s8prime, 1.0}, {StrengthenedKind::s107, 1.0},
                        {StrengthenedKind::s9prime, 1.0}, {StrengthenedKind::s18, 1.5},  {StrengthenedKind::s190, 0.3},
                        {StrengthenedKind::s110, 0.0},    {StrengthenedKind::s111, 2.0}};
  const auto w = weights("constant", 70);
  const Vec lam(w.values().begin(), w.values().end());
  for (const auto& cs : cases) {
    StrengthenedCase sc;
    sc.which = cs.k;
    sc.p = 2.0;
    if (uses_L(cs.k)) sc.L = cs.param;
    else sc.c = cs.param;
    const auto r = resolve_case(sc, w);
    for (std::size_t t = 0; t < 4; ++t) {
      TrialRng rng(21, t);
      const auto x = rng.log_uniform_vector(70, 1e-3, 1e3);
      const auto got = strengthened_ratios(r, w, x);
      const auto want = direct(cs.k, lam, 2, cs.param, oracle::to_real(x));
      CAPTURE(to_string(cs.k));
      CHECK(got.first_power == doctest::Approx(static_cast<double>(want.first_power)).epsilon(1e-11));
      CHECK(got.holder == doctest::Approx(static_cast<double>(want.holder)).epsilon(1e-11));
    }
  }
  // weighted cases on non-constant weights
  const auto v = weights("power:1", 50);
  const Vec lv(v.values().begin(), v.values().end());
  for (auto k : {StrengthenedKind::s18, StrengthenedKind::s111}) {
    for (double c : {1.2, 3.0}) {
      StrengthenedCase sc{k, 3.0, c, kNaN};
      TrialRng rng(4, 1);
      const auto x = rng.log_uniform_vector(50, 1e-3, 1e3);
      const auto got = strengthened_ratios(resolve_case(sc, v), v, x);
      const auto want = direct(k, lv, 3, c, oracle::to_real(x));
      CHECK(got.first_power == doctest::Approx(static_cast<double>(want.first_power)).epsilon(1e-11));
    }
  }
}

TEST_CASE("all eight cases hold on random and deterministic profiles") {
  StrengthenedOptions opt;
  opt.trials = 100;
  for (const char* text : {"constant", "power:0.5", "power:1", "geometric:1.01"}) {
    const auto w = weights(text, 1000);
    for (double p : {1.5, 2.0, 3.0}) {
      for (auto k : all_strengthened_kinds()) {
        StrengthenedCase sc;
        sc.which = k;
        sc.p = p;
        if (k == StrengthenedKind::s18 || k == StrengthenedKind::s111) sc.c = p;
        if (k == StrengthenedKind::s190 || k == StrengthenedKind::s110) sc.c = 0.0;
        StrengthenedCase resolved;
        try {
          resolved = resolve_case(sc, w);
        } catch (const DomainError&) {
          // L or L' of these weights falls outside the case's range
          continue;
        }
        const auto r = check_strengthened(resolved, w, opt);
        CAPTURE(text);
        CAPTURE(p);
        CAPTURE(r.which);
        CHECK(r.pass);
        CHECK(r.holder_pass);
        CHECK(r.max_holder_ratio <= 1.0 + 1e-10);
      }
    }
  }
}

TEST_CASE("holder chain and dual constant") {
  const auto w = weights("power:0.5", 800);
  const double base = cartlidge_L(w);
  StrengthenedOptions opt;
  opt.trials = 100;
  for (double L : {base, 0.5 * (base + 2.0)}) {
    if (L >= 2.0) continue;
    for (auto k : {StrengthenedKind::s140, StrengthenedKind::s107}) {
      StrengthenedCase sc{k, 2.0, kNaN, L};
      const auto r = check_strengthened(resolve_case(sc, w), w, opt);
      CHECK(r.pass);
      if (r.pass) CHECK(r.holder_pass);
    }
  }
}

TEST_CASE("parameter domains") {
  const auto w = weights("constant", 100);
  CHECK_THROWS_AS(resolve_case({StrengthenedKind::s18, 2.0, 0.5, kNaN}, w), DomainError);
  CHECK_THROWS_AS(resolve_case({StrengthenedKind::s18, 2.0, 2.5, kNaN}, w), DomainError);
  CHECK_THROWS_AS(resolve_case({StrengthenedKind::s190, 2.0, 1.0, kNaN}, w), DomainError);
  CHECK_THROWS_AS(resolve_case({StrengthenedKind::s107, 2.0, kNaN, 2.0}, w), DomainError);
  CHECK_THROWS_AS(resolve_case({StrengthenedKind::s140, 2.0, kNaN, 2.0}, w), DomainError);
}

TEST_CASE("parallel equals serial") {
  const auto w = weights("power:1", 500);
  StrengthenedOptions par;
  par.trials = 150;
  StrengthenedOptions ser = par;
  ser.exec = Execution::serial;
  const auto sc = resolve_case({StrengthenedKind::s18, 2.0, 1.7, kNaN}, w);
  const auto a = check_strengthened(sc, w, par);
  const auto b = check_strengthened(sc, w, ser);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.max_holder_ratio == b.max_holder_ratio);
  CHECK(a.worst == b.worst);
}

TEST_CASE("mu choices") {
  const auto c = weights("constant", 2000);
  const auto cart = verify_mu_choice(MuChoice::cartlidge, c, 2.0, 1.0);
  CHECK(cart.pass());
  CHECK(cart.identity_error <= 1e-12);

  for (const char* text : {"constant", "power:1", "power:3", "geometric:1.01"}) {
    const auto w = weights(text, 2000);
    for (double p : {1.5, 2.0, 4.0}) {
      for (double cc : {1.1, 0.5 * (1.0 + p), p}) {
        const auto r = verify_mu_choice(MuChoice::copson_18, w, p, cc);
        CAPTURE(text);
        CAPTURE(p);
        CAPTURE(cc);
        CHECK(r.identity_error <= 1e-12);
        CHECK(r.feasible);
        CHECK(r.min_lhs >= (cc - 1.0) - 1e-10);
      }
      for (double cc : {0.0, 0.5}) {
        const auto r = verify_mu_choice(MuChoice::leindler_110, w, p, cc);
        CHECK(r.identity_error <= 1e-12);
        CHECK(r.pass());
      }
      const double L = cartlidge_L(w);
      if (L < p / (p - 1.0)) {
        const auto r = verify_mu_choice(MuChoice::dual_107, w, p, L);
        CHECK(r.identity_error <= 1e-12);
        CHECK(r.pass());
      }
      if (L < p) CHECK(verify_mu_choice(MuChoice::cartlidge, w, p, L).pass());
    }
  }
  CHECK(parse_mu_choice("copson_1.8") == MuChoice::copson_18);
  CHECK_THROWS_AS(parse_mu_choice("nope"), DomainError);
  CHECK_THROWS_AS(verify_mu_choice(MuChoice::leindler_110, c, 2.0, 1.5), DomainError);
}

}  // TEST_SUITE
