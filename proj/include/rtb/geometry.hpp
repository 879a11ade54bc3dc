#pragma once

// Right-triangle billiard table in the canonical frame:
//
//            Y = (leg_x, leg_y)
//           /|
//      hyp / | vertical leg
//         /  |
//        O---X      O = (0,0), X = (leg_x, 0), right angle at X
//     horizontal leg
//
// The angle at O is alpha/2 and the hypotenuse has unit length.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rtb/error.hpp"
#include "rtb/real.hpp"

namespace rtb {

enum class Wall : std::uint8_t { Horizontal, Vertical, Hypotenuse };

inline constexpr std::array<Wall, 3> kAllWalls = {Wall::Horizontal, Wall::Vertical,
                                                 Wall::Hypotenuse};

constexpr bool is_leg(Wall w) noexcept { return w != Wall::Hypotenuse; }

/// Three-letter wall alphabet used in logs: H, V, HYP.
constexpr std::string_view wall_code(Wall w) noexcept {
  switch (w) {
    case Wall::Horizontal: return "H";
    case Wall::Vertical: return "V";
    case Wall::Hypotenuse: return "HYP";
  }
  return "?";
}

Wall parse_wall(std::string_view code);

template <class Real>
struct Point {
  Real x{0};
  Real y{0};
};

template <class Real>
struct TriangleSpec {
  Real alpha;
  Real half_angle;
  Real leg_x;
  Real leg_y;
  Real hyp_len;

  Point<Real> vertex_o() const { return {Real(0), Real(0)}; }
  Point<Real> vertex_x() const { return {leg_x, Real(0)}; }
  Point<Real> vertex_y() const { return {leg_x, leg_y}; }
};

template <class Real>
TriangleSpec<Real> build_triangle(Real alpha) {
  using std::cos;
  using std::sin;
  if (!(alpha > 0) || !(alpha < pi<Real>())) {
    throw Error(ErrorKind::Domain, "alpha must lie in (0, pi)");
  }
  const Real half = alpha / 2;
  return TriangleSpec<Real>{alpha, half, cos(half), sin(half), Real(1)};
}

/// Direction angle of the wall line: 0, π/2 or α/2.
template <class Real>
Real wall_direction(Wall w, const TriangleSpec<Real>& tri) {
  switch (w) {
    case Wall::Horizontal: return Real(0);
    case Wall::Vertical: return pi<Real>() / 2;
    case Wall::Hypotenuse: return tri.half_angle;
  }
  return Real(0);
}

/// Specular law θ' = 2β − θ, reduced into [0, 2π).
template <class Real>
Real reflect_direction(Real theta, Wall w, const TriangleSpec<Real>& tri) {
  switch (w) {
    case Wall::Horizontal: return wrap_two_pi<Real>(-theta);
    case Wall::Vertical: return wrap_two_pi<Real>(pi<Real>() - theta);
    case Wall::Hypotenuse: return wrap_two_pi<Real>(tri.alpha - theta);
  }
  return theta;
}

/// Unit normal pointing into the triangle.
template <class Real>
Point<Real> inward_normal(Wall w, const TriangleSpec<Real>& tri) {
  switch (w) {
    case Wall::Horizontal: return {Real(0), Real(1)};
    case Wall::Vertical: return {Real(-1), Real(0)};
    case Wall::Hypotenuse: return {tri.leg_y, -tri.leg_x};
  }
  return {};
}

/// Point at arclength fraction s along the wall (H: O→X, V: X→Y, HYP: O→Y).
template <class Real>
Point<Real> point_on_wall(Wall w, Real s, const TriangleSpec<Real>& tri) {
  switch (w) {
    case Wall::Horizontal: return {s * tri.leg_x, Real(0)};
    case Wall::Vertical: return {tri.leg_x, s * tri.leg_y};
    case Wall::Hypotenuse: return {s * tri.leg_x, s * tri.leg_y};
  }
  return {};
}

/// Signed distance of p from the wall line; positive inside the triangle.
template <class Real>
Real wall_distance(Wall w, Point<Real> p, const TriangleSpec<Real>& tri) {
  switch (w) {
    case Wall::Horizontal: return p.y;
    case Wall::Vertical: return tri.leg_x - p.x;
    case Wall::Hypotenuse: return tri.leg_y * p.x - tri.leg_x * p.y;
  }
  return Real(0);
}

template <class Real>
struct Collision {
  Wall wall;
  Point<Real> point;
  Real path_length;
};

/// Wall-to-wall flight from pos in direction theta.
///
/// The exit time is the minimum over the half-planes the ray is leaving,
/// which for a convex table needs no segment-bound checks. `from` is the wall
/// pos lies on, if any; it is never a candidate. The hit point is snapped onto
/// the wall line.
template <class Real>
Collision<Real> next_collision(Point<Real> pos, Real theta, const TriangleSpec<Real>& tri,
                               Real eps_corner, std::optional<Wall> from = std::nullopt) {
  using std::abs;
  using std::cos;
  using std::max;
  using std::min;
  using std::sin;
  using std::sqrt;

  const Real dx = cos(theta);
  const Real dy = sin(theta);

  struct Candidate {
    Wall wall;
    Real t;
  };
  std::array<Candidate, 3> cand{};
  int count = 0;

  for (Wall w : kAllWalls) {
    if (from && *from == w) continue;
    const Point<Real> n = inward_normal(w, tri);
    const Real approach = -(n.x * dx + n.y * dy);  // > 0 when moving toward the wall
    if (!(approach > 0)) continue;
    cand[count++] = {w, wall_distance(w, pos, tri) / approach};
  }
  if (count == 0) {
    throw Error(ErrorKind::NumericalDegeneracy, "no forward wall intersection");
  }

  int best = 0;
  for (int i = 1; i < count; ++i) {
    if (cand[i].t < cand[best].t) best = i;
  }
  const Real t = cand[best].t;
  if (!(t > 0)) {
    throw Error(ErrorKind::NumericalDegeneracy, "non-positive flight time");
  }
  for (int i = 0; i < count; ++i) {
    if (i != best && abs(cand[i].t - t) <= Real(1e-14) * max(Real(1), t)) {
      throw Error(ErrorKind::CornerHit, "two walls hit simultaneously");
    }
  }

  const Wall wall = cand[best].wall;
  Point<Real> hit{pos.x + t * dx, pos.y + t * dy};
  switch (wall) {
    case Wall::Horizontal:
      hit = {min(max(hit.x, Real(0)), tri.leg_x), Real(0)};
      break;
    case Wall::Vertical:
      hit = {tri.leg_x, min(max(hit.y, Real(0)), tri.leg_y)};
      break;
    case Wall::Hypotenuse: {
      Real u = hit.x * tri.leg_x + hit.y * tri.leg_y;
      u = min(max(u, Real(0)), tri.hyp_len);
      hit = {u * tri.leg_x, u * tri.leg_y};
      break;
    }
  }

  for (const Point<Real>& v : {tri.vertex_o(), tri.vertex_x(), tri.vertex_y()}) {
    const Real ddx = hit.x - v.x;
    const Real ddy = hit.y - v.y;
    if (sqrt(ddx * ddx + ddy * ddy) < eps_corner) {
      throw Error(ErrorKind::CornerHit, "trajectory reached a vertex");
    }
  }
  return {wall, hit, t};
}

}  // namespace rtb
