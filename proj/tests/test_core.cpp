#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lpnorm/factorable.hpp"
#include "lpnorm/numeric.hpp"
#include "lpnorm/parallel.hpp"
#include "lpnorm/weights.hpp"
#include "oracle.hpp"

using namespace lpnorm;

TEST_SUITE("core") {

TEST_CASE("constant weights") {
  const auto w = build_weights(WeightSpec::constant(), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(w.lambda(n) == 1.0);
    CHECK(w.partial(n) == static_cast<double>(n));
    CHECK(w.tail(n) == static_cast<double>(6 - n));
  }
  CHECK(w.partial(0) == 0.0);
  CHECK(w.tail(6) == 0.0);
}

TEST_CASE("power and geometric weights") {
  const auto pw = build_weights(WeightSpec::power(1.0), 3);
  CHECK(pw.partial(1) == 1.0);
  CHECK(pw.partial(2) == 3.0);
  CHECK(pw.partial(3) == 6.0);
  CHECK(pw.partial_ratio(1) == doctest::Approx(1.0));
  CHECK(pw.partial_ratio(2) == doctest::Approx(1.5));
  CHECK(pw.partial_ratio(3) == doctest::Approx(2.0));

  const auto g = build_weights(WeightSpec::geometric(2.0), 3);
  CHECK(g.partial(1) == 2.0);
  CHECK(g.partial(2) == 6.0);
  CHECK(g.partial(3) == 14.0);
}

TEST_CASE("invariants against long double sums") {
  for (const char* text : {"constant", "power:0.5", "power:-0.5", "power:3", "geometric:1.01", "geometric:0.99"}) {
    CAPTURE(text);
    const auto w = build_weights(WeightSpec::parse(text), 2000);
    const auto lam = oracle::Vec(w.values().begin(), w.values().end());
    const auto Lam = oracle::prefix(lam);
    const auto Tail = oracle::suffix(lam);
    for (std::size_t n = 1; n <= w.size(); ++n) {
      CHECK(w.lambda(n) > 0.0);
      CHECK(std::fabs(w.partial(n) - static_cast<double>(Lam[n - 1])) <= 1e-14 * w.partial(n));
      CHECK(std::fabs(w.tail(n) - static_cast<double>(Tail[n - 1])) <= 1e-14 * w.tail(n));
      if (n > 1) {
        CHECK(w.partial(n) > w.partial(n - 1));
        CHECK(w.tail(n) < w.tail(n - 1));
      }
    }
    CHECK(std::fabs(w.partial(w.size()) - w.tail(1)) <= 1e-12 * w.tail(1));
  }
}

TEST_CASE("power weights have nondecreasing Lambda/lambda") {
  for (double a : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const auto w = build_weights(WeightSpec::power(a), 5000);
    for (std::size_t n = 2; n <= w.size(); ++n) CHECK(w.partial_ratio(n) >= w.partial_ratio(n - 1));
  }
}

TEST_CASE("weight domain errors") {
  CHECK_THROWS_AS(build_weights(WeightSpec::constant(), 0), DomainError);
  CHECK_THROWS_AS(build_weights(WeightSpec::power(-1.0), 5), DomainError);
  CHECK_THROWS_AS(build_weights(WeightSpec::geometric(0.0), 5), DomainError);
  CHECK_THROWS_AS(build_weights(WeightSpec::geometric(2.0), 2000), DomainError);
  CHECK_THROWS_AS(build_weights(WeightSpec::list({1.0, 0.0, 2.0}), 3), DomainError);
  CHECK_THROWS_AS(WeightSpec::parse("triangular"), DomainError);
  CHECK_THROWS_AS(WeightSpec::parse("power:x"), DomainError);
}

TEST_CASE("weight file parsing") {
  const auto v = parse_weight_text("# header\n1.5\n\n2\n0.25\n");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[2] == 0.25);
  CHECK_THROWS_AS(parse_weight_text("1\n-2\n"), DomainError);
  CHECK_THROWS_AS(parse_weight_text("1\nabc\n"), DomainError);
  CHECK_THROWS_AS(parse_weight_text("# only a comment\n"), DomainError);

  const auto path = std::filesystem::temp_directory_path() / "lpnorm_weights_test.txt";
  {
    std::ofstream f(path);
    f << "# w\n0.1\n0.2\n0.30000000000000004\n";
  }
  const auto spec = WeightSpec::parse("file:" + path.string());
  REQUIRE(spec.values.size() == 3);
  CHECK(spec.values[2] == 0.30000000000000004);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(WeightSpec::parse("file:/nonexistent/weights.txt"), DomainError);
}

TEST_CASE("averages") {
  const auto w3 = build_weights(WeightSpec::constant(), 3);
  const std::vector<double> x{1.0, 2.0, 3.0};
  const auto av = averages(w3, x);
  CHECK(av.forward[0] == doctest::Approx(1.0));
  CHECK(av.forward[1] == doctest::Approx(1.5));
  CHECK(av.forward[2] == doctest::Approx(2.0));

  const auto w2 = build_weights(WeightSpec::constant(), 2);
  const std::vector<double> ones{1.0, 1.0};
  const auto a2 = averages(w2, ones);
  CHECK(a2.transpose[0] == doctest::Approx(1.5));
  CHECK(a2.transpose[1] == doctest::Approx(0.5));
  CHECK(a2.forward[0] == 1.0);
  CHECK(a2.forward[1] == 1.0);

  CHECK_THROWS_AS(averages(w3, std::vector<double>{1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(averages(w3, std::vector<double>{1.0, 0.0, 2.0}), DomainError);
}

TEST_CASE("averages match the definitions") {
  const auto w = build_weights(WeightSpec::power(0.7), 60);
  TrialRng rng(3, 0);
  const auto x = rng.log_uniform_vector(60, 1e-2, 1e2);
  const auto av = averages(w, x);
  const auto lam = oracle::Vec(w.values().begin(), w.values().end());
  const auto Lam = oracle::prefix(lam), Tail = oracle::suffix(lam);
  for (std::size_t n = 0; n < 60; ++n) {
    oracle::Real f = 0, t = 0, tl = 0, tt = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      f += lam[k] * x[k];
      tt += x[k] / Tail[k];
    }
    for (std::size_t k = n; k < 60; ++k) {
      t += x[k] / Lam[k];
      tl += lam[k] * x[k];
    }
    CHECK(av.forward[n] == doctest::Approx(static_cast<double>(f / Lam[n])).epsilon(1e-13));
    CHECK(av.transpose[n] == doctest::Approx(static_cast<double>(lam[n] * t)).epsilon(1e-13));
    CHECK(av.tail[n] == doctest::Approx(static_cast<double>(tl / Tail[n])).epsilon(1e-13));
    CHECK(av.tail_transpose[n] == doctest::Approx(static_cast<double>(lam[n] * tt)).epsilon(1e-13));
    const double lo = *std::min_element(x.begin(), x.begin() + n + 1);
    const double hi = *std::max_element(x.begin(), x.begin() + n + 1);
    CHECK(av.forward[n] >= lo * (1 - 1e-15));
    CHECK(av.forward[n] <= hi * (1 + 1e-15));
  }
}

TEST_CASE("averages are homogeneous and exact for constant weights") {
  const auto w = build_weights(WeightSpec::constant(), 500);
  TrialRng rng(9, 1);
  auto x = rng.log_uniform_vector(500, 1e-3, 1e3);
  const auto a = averages(w, x);
  oracle::Real s = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    s += x[n];
    CHECK(std::fabs(a.forward[n] - static_cast<double>(s / (n + 1))) <= 1e-14 * a.forward[n]);
  }
  auto x3 = x;
  for (auto& e : x3) e *= 3.0;
  const auto b = averages(w, x3);
  for (std::size_t n = 0; n < x.size(); ++n) {
    CHECK(b.forward[n] == doctest::Approx(3.0 * a.forward[n]).epsilon(1e-14));
    CHECK(b.tail_transpose[n] == doctest::Approx(3.0 * a.tail_transpose[n]).epsilon(1e-14));
  }
}

TEST_CASE("compensated sums") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));

  LogSumExp l;
  l.add(1000.0);
  l.add(1000.0);
  CHECK(l.value() == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(relative_margin(1.0, 2.0) == doctest::Approx(0.5));
  CHECK(relative_margin(2.0, 1.0) == doctest::Approx(-0.5));
}

TEST_CASE("trial rng is reproducible and in range") {
  TrialRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(a.uniform() != c.uniform());
  for (double v : TrialRng(1, 0).log_uniform_vector(1000, 1e-3, 1e3)) {
    CHECK(v >= 1e-3 * (1 - 1e-12));
    CHECK(v <= 1e3 * (1 + 1e-12));
  }
}

TEST_CASE("scan_min parallel equals serial") {
  auto fn = [](std::size_t n) { return std::sin(0.001 * static_cast<double>(n) * static_cast<double>(n % 97)); };
  const auto p = scan_min(1, 200000, -0.999, fn);
  const auto s = scan_min_serial(1, 200000, -0.999, fn);
  CHECK(p.worst == s.worst);
  CHECK(p.worst_index == s.worst_index);
  CHECK(p.first_fail == s.first_fail);

  auto trial = [](std::size_t t, TrialRng& rng) { return rng.uniform() + 1e-3 * static_cast<double>(t % 5); };
  const auto mp = max_over_trials(5000, 11, trial);
  const auto ms = max_over_trials_serial(5000, 11, trial);
  CHECK(mp.value == ms.value);
  CHECK(mp.trial == ms.trial);
}

}  // TEST_SUITE
