#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "rtb/simulation.hpp"

using namespace rtb;
constexpr double kPi = std::numbers::pi;

namespace {

std::string csv_of(const TrajectoryConfig& cfg) {
  std::ostringstream out;
  write_collision_header(out);
  run(cfg, [&](const CollisionRecord& r) { write_collision_row(out, r); });
  return out.str();
}

TrajectoryConfig golden(double theta0, double s, std::uint64_t n, Precision p = Precision::Standard) {
  TrajectoryConfig cfg;
  cfg.alpha = GoldenExactAlpha{};
  cfg.theta0 = theta0;
  cfg.start_s = s;
  cfg.max_collisions = n;
  cfg.precision = p;
  return cfg;
}

}  // namespace

TEST_CASE("init_trajectory examples") {
  TrajectoryConfig cfg;
  cfg.alpha = RationalAlpha{1, 2};
  cfg.theta0 = 1.0;
  cfg.start_s = 0.5;
  auto st = init_trajectory<double>(cfg);
  CHECK(st.position().x == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));
  CHECK(st.position().y == 0.0);
  CHECK(st.theta() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.direction() == SymbolicDirection{PhiIndex::P0, 0});
  CHECK(st.k_paper() == 0);

  cfg.theta0 = kPi / 4;
  try {
    init_trajectory<double>(cfg);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }

  // 50-digit reference 0.3*cos(pi*phi/2)
  auto g = init_trajectory<double>(golden(0.7, 0.3, 0));
  CHECK(std::abs(g.position().x - 0.16939046592526509313) < 1e-15);
  auto gq = init_trajectory<Quad>(golden(0.7, 0.3, 0, Precision::Extended));
  CHECK(abs(gq.position().x - Quad("0.169390465925265093125948407887822")) < Quad(1e-17));
}

TEST_CASE("init_trajectory rejects outward directions and bad fractions") {
  TrajectoryConfig cfg = golden(4.0, 0.5, 10);
  CHECK_THROWS_AS(init_trajectory<double>(cfg), Error);
  cfg = golden(0.7, 1.0, 10);
  CHECK_THROWS_AS(init_trajectory<double>(cfg), Error);
  cfg = golden(0.7, 0.5, 10);
  cfg.start_wall = Wall::Vertical;  // inward from V means pointing to -x
  CHECK_THROWS_AS(init_trajectory<double>(cfg), Error);
  cfg.theta0 = 2.5;
  CHECK_NOTHROW(init_trajectory<double>(cfg));
}

TEST_CASE("step examples") {
  const auto tri = build_triangle(kPi / 2);
  SimState<double> st(tri, {0.2, 0.0}, Wall::Horizontal, kPi / 2, 1e-12);
  const CollisionRecord r = st.step();
  CHECK(r.index == 1);
  CHECK(r.wall == Wall::Hypotenuse);
  CHECK(r.point.x == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.point.y == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.k_paper == 1);

  // alpha = pi/4, theta0 perpendicular to the horizontal leg, start near O
  const auto t4 = build_triangle(kPi / 4);
  SimState<double> cyc(t4, {0.2 * t4.leg_x, 0.0}, Wall::Horizontal, kPi / 2, 1e-12);
  std::vector<std::int64_t> ks{0};
  std::vector<Wall> ws;
  for (int i = 0; i < 3; ++i) {
    const auto rec = cyc.step();
    ks.push_back(rec.k_paper);
    ws.push_back(rec.wall);
  }
  CHECK(ws == std::vector<Wall>{Wall::Hypotenuse, Wall::Horizontal, Wall::Hypotenuse});
  CHECK(ks == std::vector<std::int64_t>{0, 1, -1, 0});
}

TEST_CASE("leg records negate k_paper") {
  const auto recs = run_collect(golden(0.7, 0.5, 5000));
  std::int64_t prev = 0;
  for (const auto& r : recs) {
    if (is_leg(r.wall)) CHECK(r.k_paper == -prev);
    else CHECK(r.k_paper == prev + 1);
    prev = r.k_paper;
  }
}

TEST_CASE("run: empty stream and determinism") {
  TrajectoryConfig cfg;
  cfg.alpha = RationalAlpha{1, 2};
  cfg.theta0 = 1.0;
  cfg.max_collisions = 0;
  CHECK(run_collect(cfg).empty());
  CHECK(csv_of(cfg) == "index,wall,x,y,k_exact,k_paper,phi,cum_path\n");

  const auto a = golden(0.7, 0.5, 2000);
  CHECK(csv_of(a) == csv_of(a));
  const auto q = golden(0.7, 0.5, 2000, Precision::Extended);
  CHECK(csv_of(q) == csv_of(q));
}

TEST_CASE("golden wall sequence matches a 50-digit reference") {
  const std::string expect =
      "V HYP V HYP H HYP V HYP H V HYP V HYP H HYP V HYP V HYP H HYP V HYP H V HYP V HYP V H HYP V HYP H V "
      "HYP V HYP V H";
  for (Precision p : {Precision::Standard, Precision::Extended}) {
    std::string got;
    for (const auto& r : run_collect(golden(0.7, 0.5, 40, p))) {
      if (!got.empty()) got += ' ';
      got += wall_code(r.wall);
    }
    CHECK(got == expect);
  }
}

TEST_CASE("convergent and golden runs agree then split") {
  TrajectoryConfig conv = golden(1.0, 0.37, 5000, Precision::Extended);
  conv.alpha = GoldenConvergentAlpha{10};
  const auto a = run_collect(conv);
  const auto b = run_collect(golden(1.0, 0.37, 5000, Precision::Extended));
  std::size_t split = 0;
  while (split < a.size() && a[split].wall == b[split].wall) ++split;
  CHECK(split > 10);
  CHECK(split < a.size());
}

TEST_CASE("trajectory invariants over 10^5 golden collisions") {
  RunSummary s;
  const auto recs = run_collect(golden(0.7, 0.5, 100000), &s);
  REQUIRE(!s.abort);
  REQUIRE(recs.size() == 100000);
  const double alpha = evaluate_alpha<double>(GoldenExactAlpha{});
  const auto tri = build_triangle(alpha);
  std::size_t same = 0, legleg = 0, idx = 0, path = 0, decomp = 0;
  double prev_path = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (r.index != i + 1) ++idx;
    if (!(r.cum_path > prev_path)) ++path;
    prev_path = r.cum_path;
    if (i + 1 < recs.size() && recs[i + 1].wall == r.wall) ++same;
    if (i + 2 < recs.size() && is_leg(r.wall) && is_leg(recs[i + 1].wall) &&
        recs[i + 2].wall != Wall::Hypotenuse) {
      ++legleg;
    }
    if (i % 97 == 0) {
      const SymbolicDirection d{r.phi, r.k_exact};
      const double theta = realize(d, 0.7, alpha);
      try {
        const std::int64_t km = std::abs(r.k_exact) + 5;
        if (!(decompose(theta, 0.7, alpha, km, 1e-10) == d)) ++decomp;
      } catch (const Error&) {
        ++decomp;
      }
    }
    CHECK(std::abs(wall_distance(r.wall, Point<double>{r.point.x, r.point.y}, tri)) < 1e-10);
  }
  CHECK(idx == 0);
  CHECK(path == 0);
  CHECK(same == 0);
  CHECK(legleg == 0);
  CHECK(decomp == 0);
}

TEST_CASE("rational alpha: |k_paper| keeps growing past the early maximum") {
  TrajectoryConfig cfg;
  cfg.alpha = RationalAlpha{3, 5};
  cfg.theta0 = 1.0;
  cfg.start_s = 0.37;
  cfg.max_collisions = 100000;
  std::int64_t prefix = 0, full = 0;
  const auto s = run(cfg, [&](const CollisionRecord& r) {
    const std::int64_t a = std::abs(r.k_paper);
    if (r.index <= 1000) prefix = std::max(prefix, a);
    full = std::max(full, a);
  });
  CHECK(!s.abort);
  MESSAGE("max |K| first 1000: " << prefix << ", over 10^5: " << full);
  CHECK(full > prefix);
}

TEST_CASE("interior start") {
  TrajectoryConfig cfg = golden(0.3, 0.5, 100);
  cfg.interior_start = Point<double>{0.3, 0.1};
  const auto recs = run_collect(cfg);
  CHECK(recs.size() == 100);
  cfg.interior_start = Point<double>{0.3, -0.1};
  CHECK_THROWS_AS(run_collect(cfg), Error);
}

TEST_CASE("corner hit is a structured abort") {
  // from (0.2,0.1) straight at vertex X of the alpha = pi/2 table
  TrajectoryConfig cfg;
  cfg.alpha = LiteralAlpha{kPi / 2};
  const double c = std::sqrt(0.5);
  cfg.interior_start = Point<double>{0.2, 0.1};
  cfg.theta0 = wrap_two_pi(std::atan2(-0.1, c - 0.2));
  cfg.max_collisions = 10;
  RunSummary s;
  const auto recs = run_collect(cfg, &s);
  CHECK(recs.empty());
  REQUIRE(s.abort);
  CHECK(s.abort->kind == ErrorKind::CornerHit);
  CHECK(s.abort->index == 0);
  const Json meta = run_metadata_json(cfg, s);
  CHECK(meta["aborted"] == true);
  CHECK(meta["abort"]["kind"] == "CornerHit");
}

TEST_CASE("metadata") {
  const auto cfg = golden(0.7, 0.5, 3, Precision::Extended);
  RunSummary s;
  run_collect(cfg, &s);
  const Json j = run_metadata_json(cfg, s);
  CHECK(j["config"]["alpha"] == "golden");
  CHECK(j["config"]["precision"] == "extended");
  CHECK(j["collisions"] == 3);
  CHECK(j.contains("library_version"));
}
