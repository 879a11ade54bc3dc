#include "rtb/simulation.hpp"

#include <cmath>

namespace rtb {

std::string_view to_string(Precision p) noexcept {
  return p == Precision::Extended ? "extended" : "standard";
}

Precision parse_precision(std::string_view text) {
  if (text == "standard") return Precision::Standard;
  if (text == "extended") return Precision::Extended;
  throw Error(ErrorKind::Config, "precision must be 'standard' or 'extended'");
}

Wall parse_wall(std::string_view code) {
  for (Wall w : kAllWalls) {
    if (wall_code(w) == code) return w;
  }
  throw Error(ErrorKind::Config, "unknown wall '" + std::string(code) + "'");
}

std::string library_version() { return RTB_VERSION; }

bool is_excluded_rational_angle(double theta) {
  const double quarter = pi<double>() / 4.0;
  const double m = std::nearbyint(theta / quarter);
  return std::abs(theta - m * quarter) < 1e-12;
}

void validate_config(const TrajectoryConfig& cfg) {
  validate_alpha(cfg.alpha);
  if (!(cfg.theta0 > 0.0) || !(cfg.theta0 < two_pi<double>())) {
    throw Error(ErrorKind::Config, "theta0 must lie in (0, 2pi)");
  }
  if (is_excluded_rational_angle(cfg.theta0)) {
    throw Error(ErrorKind::Config, "theta0 is a multiple of pi/4");
  }
  if (!cfg.interior_start && (!(cfg.start_s > 0.0) || !(cfg.start_s < 1.0))) {
    throw Error(ErrorKind::Config, "start_s must lie in (0, 1)");
  }
  if (!(cfg.eps_corner >= 0.0)) throw Error(ErrorKind::Config, "eps_corner must be non-negative");
}

std::vector<CollisionRecord> run_collect(const TrajectoryConfig& cfg, RunSummary* summary) {
  std::vector<CollisionRecord> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(cfg.max_collisions, 1u << 20)));
  const RunSummary s = run(cfg, [&](const CollisionRecord& r) { out.push_back(r); });
  if (summary) *summary = s;
  return out;
}

void write_collision_header(std::ostream& out) {
  out << "index,wall,x,y,k_exact,k_paper,phi,cum_path\n";
}

void write_collision_row(std::ostream& out, const CollisionRecord& rec) {
  out << rec.index << ',' << wall_code(rec.wall) << ',' << format_double(rec.point.x) << ','
      << format_double(rec.point.y) << ',' << rec.k_exact << ',' << rec.k_paper << ','
      << phi_code(rec.phi) << ',' << format_double(rec.cum_path) << '\n';
}

Json config_to_json(const TrajectoryConfig& cfg) {
  Json j;
  j["alpha"] = format_alpha(cfg.alpha);
  j["theta0"] = cfg.theta0;
  if (cfg.interior_start) {
    j["start"] = {{"interior", {cfg.interior_start->x, cfg.interior_start->y}}};
  } else {
    j["start"] = {{"wall", wall_code(cfg.start_wall)}, {"s", cfg.start_s}};
  }
  j["max_collisions"] = cfg.max_collisions;
  j["precision"] = to_string(cfg.precision);
  j["eps_corner"] = cfg.eps_corner;
  j["seed"] = cfg.seed;
  return j;
}

Json abort_to_json(const std::optional<RunAbort>& abort) {
  if (!abort) return nullptr;
  return {{"kind", to_string(abort->kind)}, {"index", abort->index}, {"message", abort->message}};
}

Json run_metadata_json(const TrajectoryConfig& cfg, const RunSummary& summary) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["collisions"] = summary.collisions;
  j["aborted"] = summary.abort.has_value();
  j["abort"] = abort_to_json(summary.abort);
  j["leg_convention"] = "H: y=0 leg (O-X); V: x=leg_x leg (X-Y); HYP: O-Y";
  j["library_version"] = library_version();
  return j;
}

}  // namespace rtb
