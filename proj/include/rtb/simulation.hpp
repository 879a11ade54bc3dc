#pragma once

// Event-driven billiard engine. Only the position carries floating-point
// error: the flight direction is re-realized from the exact symbolic state
// (φ, K) after every bounce.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "rtb/alpha.hpp"
#include "rtb/geometry.hpp"
#include "rtb/io.hpp"
#include "rtb/real.hpp"
#include "rtb/symbolic.hpp"

namespace rtb {

struct TrajectoryConfig {
  AlphaSpec alpha = GoldenExactAlpha{};
  double theta0 = 0.7;
  Wall start_wall = Wall::Horizontal;
  double start_s = 0.5;  // fraction of the start wall's length, in (0, 1)
  // Overrides start_wall/start_s with a point strictly inside the table.
  std::optional<Point<double>> interior_start;
  std::uint64_t max_collisions = 0;
  Precision precision = Precision::Standard;
  double eps_corner = 1e-12;
  std::uint64_t seed = 0;
};

/// Throws ConfigError.
void validate_config(const TrajectoryConfig& cfg);

/// True when theta is within 1e-12 of an integer multiple of π/4.
bool is_excluded_rational_angle(double theta);

struct CollisionRecord {
  std::uint64_t index = 0;
  Wall wall = Wall::Horizontal;
  Point<double> point;
  std::int64_t k_exact = 0;
  std::int64_t k_paper = 0;
  PhiIndex phi = PhiIndex::P0;
  double cum_path = 0.0;
};

template <class Real>
Real default_drift_tolerance();
template <>
inline double default_drift_tolerance<double>() {
  return 1e-9;
}
template <>
inline Quad default_drift_tolerance<Quad>() {
  return Quad(1e-24);
}

template <class Real>
class SimState {
 public:
  SimState(const TriangleSpec<Real>& tri, Point<Real> position, std::optional<Wall> on_wall,
           Real theta0, Real eps_corner)
      : tri_(tri),
        pos_(position),
        wall_(on_wall),
        theta0_(theta0),
        eps_corner_(eps_corner),
        drift_tol_(default_drift_tolerance<Real>()),
        theta_(realize(dir_, theta0, tri.alpha)) {}

  const TriangleSpec<Real>& triangle() const { return tri_; }
  Point<Real> position() const { return pos_; }
  std::optional<Wall> wall() const { return wall_; }
  Real theta0() const { return theta0_; }
  Real theta() const { return theta_; }
  SymbolicDirection direction() const { return dir_; }
  std::int64_t k_paper() const { return k_paper_; }
  std::uint64_t index() const { return index_; }
  Real cumulative_path() const { return cum_path_; }

  /// Advances one bounce. Leaves the state untouched when it throws.
  CollisionRecord step() {
    const Collision<Real> hit = next_collision(pos_, theta_, tri_, eps_corner_, wall_);
    const SymbolicDirection next = update_exact(dir_, hit.wall);
    const std::int64_t next_paper = update_paper(k_paper_, hit.wall);
    const Real next_theta = realize(next, theta0_, tri_.alpha);
    const Real specular = reflect_direction(theta_, hit.wall, tri_);
    if (angular_distance(next_theta, specular) > drift_tol_) {
      throw Error(ErrorKind::Drift, "symbolic and specular directions disagree");
    }

    pos_ = hit.point;
    wall_ = hit.wall;
    dir_ = next;
    k_paper_ = next_paper;
    theta_ = next_theta;
    cum_path_ += hit.path_length;
    ++index_;
    return CollisionRecord{index_,
                           hit.wall,
                           {to_double(pos_.x), to_double(pos_.y)},
                           dir_.k,
                           k_paper_,
                           dir_.phi,
                           to_double(cum_path_)};
  }

 private:
  TriangleSpec<Real> tri_;
  Point<Real> pos_;
  std::optional<Wall> wall_;
  Real theta0_;
  Real eps_corner_;
  Real drift_tol_;
  SymbolicDirection dir_{};
  std::int64_t k_paper_ = 0;
  Real theta_;
  std::uint64_t index_ = 0;
  Real cum_path_{0};
};

/// Validated start state: position from the config, (P0, K = 0) realized as θ0.
template <class Real>
SimState<Real> init_trajectory(const TrajectoryConfig& cfg) {
  validate_config(cfg);
  const TriangleSpec<Real> tri = build_triangle(evaluate_alpha<Real>(cfg.alpha));
  if (cfg.interior_start) {
    const Point<Real> p{Real(cfg.interior_start->x), Real(cfg.interior_start->y)};
    for (Wall w : kAllWalls) {
      if (!(wall_distance(w, p, tri) > 0)) {
        throw Error(ErrorKind::Config, "interior start is not strictly inside the triangle");
      }
    }
    return SimState<Real>(tri, p, std::nullopt, Real(cfg.theta0), Real(cfg.eps_corner));
  }
  using std::cos;
  using std::sin;
  const Point<Real> p = point_on_wall(cfg.start_wall, Real(cfg.start_s), tri);
  const Point<Real> n = inward_normal(cfg.start_wall, tri);
  const Real theta0(cfg.theta0);
  if (!(n.x * cos(theta0) + n.y * sin(theta0) > 0)) {
    throw Error(ErrorKind::Config, "theta0 does not point into the triangle from the start wall");
  }
  return SimState<Real>(tri, p, cfg.start_wall, theta0, Real(cfg.eps_corner));
}

struct RunAbort {
  ErrorKind kind;
  std::uint64_t index;  // collisions completed before the abort
  std::string message;
};

struct RunSummary {
  std::uint64_t collisions = 0;
  std::optional<RunAbort> abort;
};

/// Steps until `limit` records or the visitor returns false. Numerical aborts
/// end the run and are reported in the summary; anything else propagates.
template <class Real, class Visitor>
RunSummary run_state(SimState<Real>& state, std::uint64_t limit, Visitor&& on_record) {
  RunSummary summary;
  while (state.index() < limit) {
    CollisionRecord rec;
    try {
      rec = state.step();
    } catch (const Error& e) {
      if (!is_numerical_abort(e.kind())) throw;
      summary.abort = RunAbort{e.kind(), state.index(), e.what()};
      break;
    }
    ++summary.collisions;
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const CollisionRecord&>, bool>) {
      if (!on_record(rec)) break;
    } else {
      on_record(rec);
    }
  }
  return summary;
}

/// Runs cfg.max_collisions bounces at the configured precision.
template <class Visitor>
RunSummary run(const TrajectoryConfig& cfg, Visitor&& on_record) {
  if (cfg.precision == Precision::Extended) {
    auto state = init_trajectory<Quad>(cfg);
    return run_state(state, cfg.max_collisions, on_record);
  }
  auto state = init_trajectory<double>(cfg);
  return run_state(state, cfg.max_collisions, on_record);
}

std::vector<CollisionRecord> run_collect(const TrajectoryConfig& cfg, RunSummary* summary = nullptr);

// Collision log: index,wall,x,y,k_exact,k_paper,phi,cum_path
void write_collision_header(std::ostream& out);
void write_collision_row(std::ostream& out, const CollisionRecord& rec);

Json config_to_json(const TrajectoryConfig& cfg);
Json run_metadata_json(const TrajectoryConfig& cfg, const RunSummary& summary);
Json abort_to_json(const std::optional<RunAbort>& abort);

std::string library_version();

}  // namespace rtb
