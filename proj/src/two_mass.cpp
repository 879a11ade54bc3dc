#include "rtb/two_mass.hpp"

#include <cmath>
#include <limits>

namespace rtb {

std::string_view to_string(MassEventKind k) noexcept {
  switch (k) {
    case MassEventKind::ParticleParticle: return "PP";
    case MassEventKind::WallLeft: return "WL";
    case MassEventKind::WallRight: return "WR";
  }
  return "?";
}

double mass_angle_map(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw Error(ErrorKind::Domain, "masses must be positive");
  return std::acos((m1 - m2) / (m1 + m2));
}

double mass_ratio_for_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < pi<double>())) throw Error(ErrorKind::Domain, "alpha must lie in (0, pi)");
  const double t = std::tan(alpha / 2.0);
  return t * t;
}

double kinetic_energy(const MassSystem& s) { return 0.5 * (s.m1 * s.v1 * s.v1 + s.m2 * s.v2 * s.v2); }

double momentum(const MassSystem& s) { return s.m1 * s.v1 + s.m2 * s.v2; }

void validate_mass_system(const MassSystem& s) {
  if (!(s.m1 > 0.0) || !(s.m2 > 0.0)) throw Error(ErrorKind::Config, "masses must be positive");
  if (!(s.L > 0.0)) throw Error(ErrorKind::Config, "wall separation must be positive");
  if (!(0.0 <= s.x1 && s.x1 <= s.x2 && s.x2 <= s.L)) {
    throw Error(ErrorKind::Config, "positions must satisfy 0 <= x1 <= x2 <= L");
  }
  if (s.v1 == 0.0 && s.v2 == 0.0) throw Error(ErrorKind::Config, "both velocities are zero");
  if ((s.x1 == 0.0 && s.v1 < 0.0) || (s.x2 == s.L && s.v2 > 0.0) || (s.x1 == s.x2 && s.v1 > s.v2)) {
    throw Error(ErrorKind::Config, "initial velocity points out of the configuration space");
  }
}

MassSimulator::MassSimulator(const MassSystem& sys) : sys_(sys) { validate_mass_system(sys); }

MassEvent MassSimulator::step() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  MassSystem& s = sys_;
  const double t_left = s.v1 < 0.0 ? s.x1 / -s.v1 : inf;
  const double t_right = s.v2 > 0.0 ? (s.L - s.x2) / s.v2 : inf;
  const double t_pp = s.v1 > s.v2 ? (s.x2 - s.x1) / (s.v1 - s.v2) : inf;

  MassEventKind kind = MassEventKind::WallLeft;
  double dt = t_left;
  double runner_up = inf;
  for (auto [k, t] : {std::pair{MassEventKind::WallRight, t_right}, std::pair{MassEventKind::ParticleParticle, t_pp}}) {
    if (t < dt) {
      runner_up = dt;
      dt = t;
      kind = k;
    } else if (t < runner_up) {
      runner_up = t;
    }
  }
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw Error(ErrorKind::SimultaneousEvent, "no future event");
  }
  if (runner_up - dt <= 1e-14) {
    throw Error(ErrorKind::SimultaneousEvent, "two events coincide");
  }

  s.x1 += s.v1 * dt;
  s.x2 += s.v2 * dt;
  switch (kind) {
    case MassEventKind::WallLeft:
      s.x1 = 0.0;
      s.v1 = -s.v1;
      break;
    case MassEventKind::WallRight:
      s.x2 = s.L;
      s.v2 = -s.v2;
      break;
    case MassEventKind::ParticleParticle: {
      const double meet = 0.5 * (s.x1 + s.x2);
      s.x1 = s.x2 = meet;
      const double total = s.m1 + s.m2;
      const double v1 = ((s.m1 - s.m2) * s.v1 + 2.0 * s.m2 * s.v2) / total;
      const double v2 = ((s.m2 - s.m1) * s.v2 + 2.0 * s.m1 * s.v1) / total;
      s.v1 = v1;
      s.v2 = v2;
      break;
    }
  }
  s.x1 = std::clamp(s.x1, 0.0, s.L);
  s.x2 = std::clamp(s.x2, s.x1, s.L);
  time_ += dt;
  ++index_;
  return {index_, kind, time_, s};
}

std::vector<MassEvent> simulate_masses(const MassSystem& sys, std::uint64_t max_events) {
  MassSimulator sim(sys);
  std::vector<MassEvent> out;
  out.reserve(static_cast<std::size_t>(max_events));
  for (std::uint64_t i = 0; i < max_events; ++i) out.push_back(sim.step());
  return out;
}

Wall event_wall(MassEventKind kind, bool swap_legs) {
  switch (kind) {
    case MassEventKind::ParticleParticle: return Wall::Hypotenuse;
    case MassEventKind::WallLeft: return swap_legs ? Wall::Horizontal : Wall::Vertical;
    case MassEventKind::WallRight: return swap_legs ? Wall::Vertical : Wall::Horizontal;
  }
  return Wall::Hypotenuse;
}

TrajectoryConfig map_initial_conditions(const MassSystem& sys) {
  validate_mass_system(sys);
  const double r1 = std::sqrt(sys.m1);
  const double r2 = std::sqrt(sys.m2);
  const double scale = sys.L * std::sqrt(sys.m1 + sys.m2);
  // rotation by π about the (x1 = x2 = L) vertex, then scaling to unit hypotenuse
  const Point<double> p{(sys.L - sys.x1) * r1 / scale, (sys.L - sys.x2) * r2 / scale};

  TrajectoryConfig cfg;
  const double alpha = mass_angle_map(sys.m1, sys.m2);
  cfg.alpha = LiteralAlpha{alpha};
  cfg.theta0 = wrap_two_pi(std::atan2(-sys.v2 * r2, -sys.v1 * r1));

  const bool on_left = sys.x1 == 0.0;
  const bool on_right = sys.x2 == sys.L;
  const bool on_line = sys.x1 == sys.x2;
  if (on_left + on_right + on_line > 1) {
    throw Error(ErrorKind::DegenerateStart, "initial configuration is a corner of the triangle");
  }
  const TriangleSpec<double> tri = build_triangle(alpha);
  if (on_right) {
    cfg.start_wall = Wall::Horizontal;
    cfg.start_s = p.x / tri.leg_x;
  } else if (on_left) {
    cfg.start_wall = Wall::Vertical;
    cfg.start_s = p.y / tri.leg_y;
  } else if (on_line) {
    cfg.start_wall = Wall::Hypotenuse;
    cfg.start_s = std::hypot(p.x, p.y);
  } else {
    cfg.interior_start = p;
  }
  return cfg;
}

EventComparison compare_event_sequences(const MassSystem& sys, std::uint64_t n_events,
                                        Precision precision, bool swap_legs) {
  if (n_events < 1) throw Error(ErrorKind::Config, "n_events must be at least 1");
  TrajectoryConfig cfg = map_initial_conditions(sys);
  cfg.precision = precision;
  cfg.max_collisions = n_events;

  EventComparison report;
  MassSimulator sim(sys);
  const double e0 = kinetic_energy(sys);
  const RunSummary summary = run(cfg, [&](const CollisionRecord& rec) {
    MassEvent ev;
    try {
      ev = sim.step();
    } catch (const Error& e) {
      report.mass_abort = MemberError{e.kind(), e.what()};
      return false;
    }
    report.compared = rec.index;
    report.max_energy_drift =
        std::max(report.max_energy_drift, std::abs(kinetic_energy(ev.state) - e0) / e0);
    if (event_wall(ev.kind, swap_legs) != rec.wall) {
      report.first_disagreement = rec.index;
      return false;
    }
    return true;
  });
  report.billiard_abort = summary.abort;
  return report;
}

void write_event_header(std::ostream& out) { out << "index,kind,time,x1,x2,v1,v2\n"; }

void write_event_row(std::ostream& out, const MassEvent& e) {
  out << e.index << ',' << to_string(e.kind) << ',' << format_double(e.time) << ','
      << format_double(e.state.x1) << ',' << format_double(e.state.x2) << ','
      << format_double(e.state.v1) << ',' << format_double(e.state.v2) << '\n';
}

Json mass_system_to_json(const MassSystem& s) {
  return {{"m1", s.m1}, {"m2", s.m2}, {"L", s.L}, {"x1", s.x1},
          {"x2", s.x2}, {"v1", s.v1}, {"v2", s.v2}};
}

}  // namespace rtb
