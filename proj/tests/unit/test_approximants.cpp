#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rtb/alpha.hpp"
#include "rtb/approximants.hpp"
#include "rtb/observables.hpp"

using namespace rtb;

TEST_CASE("fib examples and range") {
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 1);
  CHECK(fib(10) == 55);
  CHECK(fib(30) == 832040);
  CHECK(fib(90) == 2880067194370816120LL);
  CHECK_THROWS_AS(fib(0), Error);
  CHECK_THROWS_AS(fib(91), Error);
}

TEST_CASE("binet rounds to fib for n <= 70") {
  CHECK(binet(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binet(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(binet(10) - 55.0) < 1e-9);
  for (int n = 1; n <= kMaxBinetIndex; ++n) {
    CHECK_MESSAGE(std::llround(binet(n)) == fib(n), "n=" << n);
  }
  CHECK_THROWS_AS(binet(71), Error);
}

TEST_CASE("golden_convergent") {
  auto c = golden_convergent(2);
  CHECK((c.M == 1 && c.N == 2));
  c = golden_convergent(10);
  CHECK((c.M == 55 && c.N == 89));
  const Quad phi = (sqrt(Quad(5)) - 1) / 2;
  for (int n = 5; n <= 40; ++n) {
    c = golden_convergent(n);
    const Quad N = static_cast<Quad>(c.N);
    CHECK(abs(Quad(c.M) / N - phi) < 1 / (N * N));
    CHECK(gcd(c.M, c.N) == 1);
  }
  CHECK_THROWS_AS(golden_convergent(1), Error);
}

TEST_CASE("ln N_n grows with slope |ln phi|") {
  std::vector<double> xs, ys;
  for (int n = 5; n <= 40; ++n) {
    xs.push_back(n);
    ys.push_back(static_cast<double>(golden_convergent(n).N));
  }
  const FitResult f = fit_scaling(xs, ys, FitModel::Exponential);
  CHECK(std::abs(f.parameter - 0.4812) < 1e-3);
  CHECK(std::abs(f.parameter + std::log(golden_phi())) < 1e-4);
}

TEST_CASE("cf_convergents") {
  const auto g = cf_convergents(golden_phi(), 30);
  REQUIRE(g.size() >= 25);
  for (const auto& c : g) {
    const auto ref = golden_convergent(c.n);
    CHECK(c.M == ref.M);
    CHECK(c.N == ref.N);
  }

  const auto half = cf_convergents(0.5, 5);
  REQUIRE(half.size() == 1);
  CHECK((half[0].M == 1 && half[0].N == 2));

  const auto p = cf_convergents(std::numbers::pi - 3.0, 6);
  REQUIRE(p.size() >= 4);
  CHECK((p[0].M == 1 && p[0].N == 7));
  CHECK((p[1].M == 15 && p[1].N == 106));
  CHECK((p[2].M == 16 && p[2].N == 113));
  CHECK((p[3].M == 4687 && p[3].N == 33102));
  // alternate around x, and each is the best approximation up to its denominator
  const double x = std::numbers::pi - 3.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    CHECK((p[i].value() - x) * (p[i + 1].value() - x) < 0);
    CHECK(gcd(p[i].M, p[i].N) == 1);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double err = std::abs(p[i].value() - x);
    for (std::int64_t q = 1; q < static_cast<std::int64_t>(p[i].N); ++q) {
      const double m = std::round(x * q);
      CHECK(std::abs(m / q - x) > err);
    }
  }
}

TEST_CASE("liouville_alpha") {
  auto a = liouville_alpha(1);
  CHECK((a.M == 1 && a.N == 10));
  a = liouville_alpha(2);
  CHECK((a.M == 11 && a.N == 100));
  a = liouville_alpha(3);
  CHECK((a.M == 110001 && a.N == 1000000));
  CHECK_THROWS_AS(liouville_alpha(5), Error);
}

TEST_CASE("alpha specs parse and format") {
  for (const char* s : {"golden", "rational:3/5", "golden-convergent:10", "liouville:3", "rad:1.25"}) {
    CHECK(format_alpha(parse_alpha(s)) == s);
  }
  CHECK_THROWS_AS(validate_alpha(parse_alpha("rational:2/4")), Error);
  CHECK_THROWS_AS(validate_alpha(parse_alpha("rational:5/3")), Error);
  CHECK_THROWS_AS(parse_alpha("nonsense"), Error);
  CHECK(evaluate_alpha<double>(parse_alpha("rational:1/2")) == doctest::Approx(std::numbers::pi / 2));
  CHECK(evaluate_alpha<double>(parse_alpha("golden-convergent:10")) ==
        doctest::Approx(std::numbers::pi * 55.0 / 89.0).epsilon(1e-15));
  const auto r = rational_form(parse_alpha("golden-convergent:10"));
  REQUIRE(r);
  CHECK((r->M == 55 && r->N == 89));
  CHECK(!rational_form(parse_alpha("golden")));
}
