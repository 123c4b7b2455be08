#include <doctest.h>

#include <cmath>

#include "lpnorm/hlp.hpp"
#include "lpnorm/parallel.hpp"
#include "oracle.hpp"

using namespace lpnorm;

namespace {

using oracle::Real;

// Primal recurrence in long double, straight from its definition.
oracle::Vec direct_mu(Real p, std::size_t n) {
  const Real base = std::pow((1 - p) / p, p);
  oracle::Vec mu{base};
  for (std::size_t k = 1; k < n; ++k) {
    const Real inner = std::pow(Real(k), p / (p - 1)) * std::pow(mu.back(), 1 / (1 - p)) - 1;
    if (!(inner > 0)) break;
    mu.push_back(std::pow(Real(k + 1), p) * std::pow(inner, 1 - p) + base);
  }
  return mu;
}

oracle::Vec dual_hlp_mu(Real p, std::size_t n) {
  const Real shift = std::pow(1 / p - 1, p / (p - 1));
  oracle::Vec mu{0};
  for (std::size_t k = 1; k < n; ++k)
    mu.push_back(std::pow(std::pow(Real(k), -p) + std::pow(mu.back(), 1 - p), 1 / (1 - p)) - shift);
  return mu;
}

}  // namespace

TEST_SUITE("hlp") {

TEST_CASE("constant and first recurrence values") {
  CHECK(hlp_constant(0.5) == doctest::Approx(1.0));
  CHECK(hlp_constant(1.0 / 3.0) == doctest::Approx(std::pow(0.5, 1.0 / 3.0)));
  const auto t = mu_direct(1.0 / 3.0, 10);
  CHECK(t.mu(1) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  const auto tg = thm114_target(1.0 / 3.0);
  CHECK(tg.at(1) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(tg.a == doctest::Approx(std::pow(2.0, -2.0 / 3.0)));
  CHECK(tg.b == doctest::Approx(std::pow(2.0, -2.0 / 3.0)));
}

TEST_CASE("primal recurrence matches long double") {
  for (double p : {1.0 / 3.0, 0.34, 0.35, 0.4}) {
    const auto t = mu_direct(p, 500);
    const auto want = direct_mu(p, 500);
    CAPTURE(p);
    CHECK(t.values.size() == want.size());
    for (std::size_t n = 0; n < std::min(t.values.size(), want.size()); ++n)
      CHECK(t.values[n] == doctest::Approx(static_cast<double>(want[n])).epsilon(1e-11));
  }
}

TEST_CASE("linear-target certification") {
  const auto third = thm114_certify(1.0 / 3.0);
  REQUIRE(third.n0.has_value());
  CHECK(*third.n0 == 1);
  const auto r = thm114_certify(0.35);
  REQUIRE(r.n0.has_value());
  CHECK(*r.n0 == 4);
  CHECK(r.margin == doctest::Approx(0.002642944094984667).epsilon(1e-9));
  CHECK(thm114_margin_at(0.35, 4) == doctest::Approx(r.margin));
  CHECK(thm114_margin_at(0.35, 3) < 0.0);
  // observed: no certificate for p = 0.45; the recurrence leaves its domain at n = 7
  const auto bad = thm114_certify(0.45);
  CHECK_FALSE(bad.n0.has_value());
  CHECK(bad.domain_failure == std::optional<std::size_t>(7));
}

TEST_CASE("certified traces stay above n^p and the target") {
  for (double p : {1.0 / 3.0, 0.34, 0.35}) {
    const auto r = thm114_certify(p, 20000);
    REQUIRE(r.n0.has_value());
    const auto& t = r.trace;
    const auto tg = thm114_target(p);
    CAPTURE(p);
    REQUIRE(t.values.size() == 20000);
    for (std::size_t n = *r.n0; n <= t.values.size(); ++n) {
      CHECK(t.mu(n) > std::pow(static_cast<double>(n), p));
      CHECK(t.mu(n) >= tg.at(n) * (1 - 1e-12));
    }
  }
}

TEST_CASE("closed-form inequality and its threshold") {
  CHECK(check_146(0.346) >= 0.0);
  CHECK(check_146(0.35) < 0.0);
  for (double p : {0.335, 0.34, 0.345, 0.346, 0.35}) {
    CAPTURE(p);
    CHECK((check_146(p) >= 0.0) == (thm114_margin_at(p, 2) >= 0.0));
  }
  const auto b = bracket_146(0.335, 0.35);
  CHECK(b.hi - b.lo <= 1e-4);
  CHECK(check_146(b.lo) >= 0.0);
  CHECK(check_146(b.hi) < 0.0);
  CHECK(b.lo >= 0.346);
  CHECK(b.hi <= 0.3467);
  CHECK_THROWS_AS(bracket_146(0.4, 0.45), DomainError);
}

TEST_CASE("dual recurrence") {
  const auto t = mu_dual_hlp(1.0 / 3.0, 100);
  CHECK(t.mu(1) == 0.0);
  CHECK(t.mu(2) == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-14));
  const auto r = mu_dual_hlp(0.35, 10000);
  CHECK(r.pass());
  CHECK(r.values.size() == 10000);
  for (std::size_t n = 2; n <= 10000; ++n) CHECK(r.mu(n) > 0.0);
  const auto want = dual_hlp_mu(0.35, 300);
  for (std::size_t n = 0; n < want.size(); ++n)
    CHECK(r.values[n] == doctest::Approx(static_cast<double>(want[n])).epsilon(1e-11));
}

TEST_CASE("second certificate") {
  for (double c : {-1.0, 0.0, 0.5}) CHECK(hlp_f(c, 0.35, 0.0) == 0.0);
  CHECK(std::isnan(hlp_f(-2.0, 0.35, 0.6)));

  const auto q = thm115_feasible(0.35, 5, -1.33542621);
  CHECK(q.feasible);
  CHECK(q.margin_mu >= 0.0);
  CHECK(q.margin_mu <= 1e-8);
  CHECK(q.margin_c > 0.0);
  CHECK(q.margin_f >= 0.0);
  const auto edge = thm115_feasible(0.35, 5, -1.0 / 0.7);
  CHECK_FALSE(edge.feasible);
  CHECK(edge.margin_c == doctest::Approx(0.0).epsilon(1e-15));

  const auto s = search_c(0.35);
  REQUIRE(s.n0.has_value());
  CHECK(*s.n0 == 5);
  CHECK(s.c == doctest::Approx(-1.33542621).epsilon(1e-8));
  CHECK(s.c_min <= s.c);
  CHECK(s.c_min > -1.0 / 0.7);
  CHECK(s.report.feasible);
  CHECK(thm115_feasible(0.35, 5, s.c_min).feasible);
  CHECK(thm115_feasible(0.35, 5, 0.5 * (s.c + s.c_min)).feasible);

  const auto third = search_c(1.0 / 3.0);
  REQUIRE(third.n0.has_value());
  CHECK(*third.n0 <= 5);
  // observed: nothing feasible for p = 0.45 up to n0 = 10^4
  CHECK_FALSE(search_c(0.45).n0.has_value());
}

TEST_CASE("direct probes") {
  for (double p : {0.2, 0.3, 0.45}) CHECK(probe_hlp(p, 1.0 / p + 0.01, 1) == doctest::Approx(1.0));
  const double cp = hlp_constant(0.3);
  const double big = probe_hlp(0.3, 1.0 / 0.3 + 0.01, 100000);
  CHECK(big >= cp - 1e-9);
  CHECK(big <= 1.1 * cp);

  const std::vector<double> s_values{1.0 / 0.35 + 0.01, 1.0 / 0.35 + 0.1, 1.0 / 0.35 + 1.0};
  const std::vector<std::size_t> n_values{10, 1000, 100000};
  const auto grid = probe_hlp_grid(0.35, s_values, n_values);
  const auto serial = probe_hlp_grid(0.35, s_values, n_values, Execution::serial);
  REQUIRE(grid.size() == 9);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid[i].ratio == serial[i].ratio);
    CHECK(grid[i].ratio >= hlp_constant(0.35) - 1e-9);
  }

  // single term: 1 / (1/2)^{-1/2}
  CHECK(probe_hlp_dual(1.0 / 3.0, {1.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  // N = 2, ones: (1 + 1.5^{-1/2}) / (2 sqrt 2)
  CHECK(probe_hlp_dual(1.0 / 3.0, {1.0, 1.0}) ==
        doctest::Approx((1.0 + 1.0 / std::sqrt(1.5)) / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("dual trials at certified p") {
  for (double p : {1.0 / 3.0, 0.35}) {
    const auto r = hlp_dual_trials(p, 500, 1000, 3);
    CHECK(r.pass);
    CHECK(r.max_ratio <= 1.0 + 1e-10);
    const auto s = hlp_dual_trials(p, 500, 1000, 3, Execution::serial);
    CHECK(r.max_ratio == s.max_ratio);
    CHECK(r.argmax == s.argmax);
  }
}

}  // TEST_SUITE
