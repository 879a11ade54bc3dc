#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "rtb/ensemble.hpp"

using namespace rtb;

TEST_CASE("parallel map equals serial map") {
  auto fn = [](std::size_t id) {
    if (id % 7 == 3) throw Error(ErrorKind::CornerHit, "member " + std::to_string(id));
    double acc = 0.0;
    for (std::size_t i = 0; i < 1000 + id; ++i) acc += std::sin(static_cast<double>(i * id));
    return acc;
  };
  const auto s = ensemble_map_serial(200, fn);
  for (int threads : {1, 3, 8}) {
    const auto p = ensemble_map_parallel(200, fn, threads);
    REQUIRE(p.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(p[i].ok() == s[i].ok());
      if (s[i].ok()) CHECK(*p[i].value == *s[i].value);
      else CHECK(p[i].error->kind == ErrorKind::CornerHit);
    }
  }
}

TEST_CASE("foreign exceptions propagate") {
  auto fn = [](std::size_t id) -> int {
    if (id == 5) throw std::logic_error("bug");
    return 1;
  };
  CHECK_THROWS_AS(ensemble_map_parallel(10, fn, 4), std::logic_error);
  CHECK_THROWS_AS(ensemble_map_serial(10, fn), std::logic_error);
}

TEST_CASE("member seeds and sampling") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t m = 0; m < 10000; ++m) seeds.insert(member_seed(42, m));
  CHECK(seeds.size() == 10000);
  CHECK(member_seed(42, 0) != member_seed(43, 0));

  for (std::uint64_t m = 0; m < 10000; ++m) {
    const EnsembleStart a = sample_member_start(42, m, true);
    const EnsembleStart b = sample_member_start(42, m, true);
    CHECK(a.theta0 == b.theta0);
    CHECK(a.s == b.s);
    CHECK(a.theta0 > 0.01);
    CHECK(a.theta0 < std::numbers::pi / 2 - 0.01);
    CHECK(std::abs(a.theta0 - std::numbers::pi / 4) > 1e-9);
    CHECK(a.s >= 0.05);
    CHECK(a.s <= 0.95);
    const EnsembleStart c = sample_member_start(42, m, false, 0.37);
    CHECK(c.theta0 == a.theta0);
    CHECK(c.s == 0.37);
    CHECK(c.wall == Wall::Horizontal);
  }
}
