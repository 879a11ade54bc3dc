#include "rtb/experiments.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rtb/geom_probability.hpp"
#include "rtb/observables.hpp"

namespace rtb {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) noexcept {
  if (kind == ErrorKind::IO) return kExitIO;
  if (is_numerical_abort(kind)) return kExitNumerical;
  return kExitConfig;
}

Json preset_to_json(const ExperimentPreset& p) {
  Json j;
  j["experiment"] = p.name;
  j["alpha"] = p.alpha;
  j["theta0"] = p.theta0 ? Json(*p.theta0) : Json(nullptr);
  j["start_wall"] = p.start_wall;
  j["start_s"] = p.start_s;
  j["collisions"] = p.collisions;
  j["precision"] = p.precision ? Json(*p.precision) : Json(nullptr);
  j["eps_corner"] = p.eps_corner;
  j["seed"] = p.seed;
  j["ensemble"] = p.ensemble;
  j["vary_start"] = p.vary_start;
  j["n_min"] = p.n_min;
  j["n_max"] = p.n_max;
  j["cap_factor"] = p.cap_factor;
  j["convention"] = p.convention;
  j["quad_tol"] = p.quad_tol;
  j["scan"] = p.scan;
  j["scan_min"] = p.scan_min;
  j["scan_max"] = p.scan_max;
  j["scan_step"] = p.scan_step;
  j["system"] = p.system ? mass_system_to_json(*p.system) : Json(nullptr);
  j["configs"] = p.configs;
  j["events"] = p.events;
  return j;
}

MassSystem sample_mass_system(std::uint64_t seed, std::uint64_t member) {
  std::mt19937_64 rng(member_seed(seed, member));
  std::uniform_real_distribution<double> log_ratio(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MassSystem s;
  s.m1 = 1.0;
  s.m2 = std::exp(log_ratio(rng));
  s.L = 1.0;
  double a = unit(rng);
  double b = unit(rng);
  if (a > b) std::swap(a, b);
  s.x1 = a;
  s.x2 = b;
  s.v1 = gauss(rng);
  s.v2 = gauss(rng);
  return s;
}

namespace {

struct ConfigFailure {
  ErrorKind kind;
  std::string message;
};

KConvention parse_convention(const std::string& text) {
  if (text == "paper") return KConvention::Paper;
  if (text == "exact") return KConvention::Exact;
  throw Error(ErrorKind::Config, "convention must be 'paper' or 'exact'");
}

Precision resolve_precision(const ExperimentPreset& p, const AlphaSpec& alpha) {
  if (p.precision) return parse_precision(*p.precision);
  return std::holds_alternative<GoldenExactAlpha>(alpha) ? Precision::Extended : Precision::Standard;
}

Json stats_json(const SampleStats& s) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"n", s.n}, {"mean", num(s.mean)}, {"stderr", num(s.std_error)}};
}

Json fit_json(const FitResult& f) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"model", to_string(f.model)}, {"parameter", num(f.parameter)},
          {"intercept", num(f.intercept)}, {"slope", num(f.slope)},
          {"slope_stderr", num(f.slope_stderr)}, {"r_squared", num(f.r_squared)},
          {"points", f.points}, {"flagged", f.flagged}};
}

Json histogram_json(const KHistogram& h) {
  Json counts = Json::array();
  for (const auto& [k, c] : h.counts) counts.push_back({{"K", k}, {"count", c}});
  return {{"convention", to_string(h.convention)}, {"k0", h.k0}, {"total", h.total}, {"counts", counts}};
}

SweepOptions sweep_options(const ExperimentPreset& p, Precision precision, std::ostream& log,
                           std::atomic<std::size_t>& done) {
  SweepOptions opt;
  opt.ensemble = p.ensemble;
  opt.seed = p.seed;
  opt.precision = precision;
  opt.vary_start = p.vary_start;
  opt.start_s = p.start_s;
  opt.cap_factor = p.cap_factor;
  opt.threads = p.threads;
  if (p.progress) {
    opt.on_member = [&log, &done, total = p.ensemble] {
      log << "  member " << ++done << "/" << total << "\n";
    };
  }
  return opt;
}

void check_range(const ExperimentPreset& p) {
  if (p.n_min < 2 || p.n_max < p.n_min) throw Error(ErrorKind::Config, "n range must satisfy 2 <= min <= max");
  if (p.ensemble < 1) throw Error(ErrorKind::Config, "ensemble must be at least 1");
}

TrajectoryConfig single_config(const ExperimentPreset& p) {
  TrajectoryConfig cfg;
  cfg.alpha = parse_alpha(p.alpha);
  cfg.theta0 = p.theta0.value_or(0.7);
  cfg.start_wall = parse_wall(p.start_wall);
  cfg.start_s = p.start_s;
  cfg.max_collisions = p.collisions;
  cfg.precision = resolve_precision(p, cfg.alpha);
  cfg.eps_corner = p.eps_corner;
  cfg.seed = p.seed;
  validate_config(cfg);
  return cfg;
}

/// One table row: numbers written with shortest round-trip formatting.
std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_string()) return v.get<std::string>();
  throw Error(ErrorKind::Schema, "unexpected table cell type");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Schema, std::string("result is missing '") + key + "'");
  }
  return j.at(key);
}

// --- presets -----------------------------------------------------------------------

int run_simulate(const ExperimentPreset& p, const fs::path& out, Json& result) {
  const TrajectoryConfig cfg = single_config(p);
  std::ostringstream csv;
  write_collision_header(csv);
  const RunSummary summary = run(cfg, [&](const CollisionRecord& r) { write_collision_row(csv, r); });
  write_text_file(out / "collisions.csv", csv.str());
  result["run"] = run_metadata_json(cfg, summary);
  write_text_file(out / "run.json", dump_json(result["run"]));
  return summary.abort ? kExitNumerical : kExitOk;
}

struct KhistMember {
  KHistogram paper;
  KHistogram exact;
  double mean_paper = 0.0;
  double batch_se_paper = 0.0;
  std::int64_t prefix_max_abs = 0;  // max |k_paper| over the first 1000 collisions
  std::int64_t max_abs = 0;
  std::optional<RunAbort> abort;
};

int run_khist(const ExperimentPreset& p, const fs::path& out, Json& result, std::ostream& log) {
  const TrajectoryConfig base = single_config(p);
  const KConvention convention = parse_convention(p.convention);
  std::atomic<std::size_t> done{0};
  auto member = [&](std::size_t id) {
    TrajectoryConfig cfg = base;
    if (!(p.ensemble == 1 && p.theta0)) {
      const EnsembleStart st = sample_member_start(p.seed, id, p.vary_start, p.start_s);
      cfg.theta0 = st.theta0;
      cfg.start_wall = st.wall;
      cfg.start_s = st.s;
    }
    KhistMember m;
    m.paper.convention = KConvention::Paper;
    m.exact.convention = KConvention::Exact;
    BatchMeans bm(std::max<std::uint64_t>(1, cfg.max_collisions / 100));
    const RunSummary s = run(cfg, [&](const CollisionRecord& r) {
      m.paper.add(r.k_paper);
      m.exact.add(r.k_exact);
      bm.add(static_cast<double>(r.k_paper));
      const std::int64_t a = r.k_paper < 0 ? -r.k_paper : r.k_paper;
      if (r.index <= 1000) m.prefix_max_abs = std::max(m.prefix_max_abs, a);
      m.max_abs = std::max(m.max_abs, a);
    });
    m.mean_paper = bm.mean();
    m.batch_se_paper = bm.standard_error();
    m.abort = s.abort;
    if (p.progress) {
#pragma omp critical(rtb_progress)
      log << "  member " << ++done << "/" << p.ensemble << "\n";
    }
    return m;
  };
  const auto members = ensemble_map_parallel(p.ensemble, member, p.threads);

  KHistogram paper, exact;
  paper.convention = KConvention::Paper;
  exact.convention = KConvention::Exact;
  std::vector<double> means;
  Json per_member = Json::array();
  std::size_t aborted = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    if (!m.ok()) {
      ++aborted;
      per_member.push_back({{"id", i}, {"error", to_string(m.error->kind)}});
      continue;
    }
    const KhistMember& v = *m.value;
    if (v.abort) ++aborted;
    paper.merge(v.paper);
    exact.merge(v.exact);
    means.push_back(v.mean_paper);
    per_member.push_back({{"id", i},
                          {"mean_k_paper", v.mean_paper},
                          {"batch_stderr_k_paper", std::isfinite(v.batch_se_paper) ? Json(v.batch_se_paper) : Json(nullptr)},
                          {"max_abs_k_paper_first_1000", v.prefix_max_abs},
                          {"max_abs_k_paper", v.max_abs},
                          {"abort", abort_to_json(v.abort)}});
  }

  Json mean_json;
  if (means.size() >= 2) {
    const SampleStats st = sample_stats(means);
    mean_json = {{"mean", st.mean}, {"stderr", st.std_error}, {"method", "across-members"}};
  } else if (means.size() == 1) {
    const auto& v = *members.front().value;
    mean_json = {{"mean", v.mean_paper},
                 {"stderr", std::isfinite(v.batch_se_paper) ? Json(v.batch_se_paper) : Json(nullptr)},
                 {"method", "batch-means"}};
  }

  auto fit_or_null = [](const KHistogram& h) -> Json {
    try {
      return fit_json(fit_localization(h));
    } catch (const Error& e) {
      return {{"error", to_string(e.kind())}};
    }
  };
  Json violations = Json::array();
  for (const auto& v : symmetry_violations(paper)) {
    violations.push_back({{"offset", v.offset}, {"above", v.above}, {"below", v.below}, {"bound", v.bound}});
  }

  const KHistogram& chosen = convention == KConvention::Paper ? paper : exact;
  Json points = Json::array();
  for (const auto& [k, c] : chosen.counts) {
    points.push_back({{"K", k}, {"count", c}, {"frequency", static_cast<double>(c) / static_cast<double>(chosen.total)}});
  }
  result["points"] = points;
  result["histograms"] = {histogram_json(paper), histogram_json(exact)};
  result["mean_k_paper"] = mean_json;
  result["symmetry_violations_paper"] = violations;
  result["localization_fit"] = {{"paper", fit_or_null(paper)}, {"exact", fit_or_null(exact)}};
  result["members"] = per_member;
  result["aborted"] = aborted;
  write_text_file(out / "khist.csv", emit_plot_table(result));
  return kExitOk;
}

Json divergence_sweep(const ExperimentPreset& p, std::ostream& log) {
  check_range(p);
  const Precision precision = p.precision ? parse_precision(*p.precision) : Precision::Extended;
  Json points = Json::array();
  for (int n = p.n_min; n <= p.n_max; ++n) {
    std::atomic<std::size_t> done{0};
    const SweepOptions opt = sweep_options(p, precision, log, done);
    const DivergencePoint d = sweep_divergence(n, opt);
    if (p.progress) log << "n=" << n << " N=" << d.N << " tau*=" << d.tau.mean << "\n";
    points.push_back({{"n", d.n},
                      {"N", d.N},
                      {"tau_star", stats_json(d.tau)},
                      {"nk_paper", stats_json(d.nk_paper)},
                      {"nk_exact", stats_json(d.nk_exact)},
                      {"aborted", d.aborted},
                      {"censored", d.censored}});
  }
  return points;
}

std::vector<double> column(const Json& points, const char* outer, const char* inner = nullptr) {
  std::vector<double> out;
  for (const auto& pt : points) {
    const Json& v = inner ? pt.at(outer).at(inner) : pt.at(outer);
    out.push_back(v.is_null() ? std::nan("") : v.get<double>());
  }
  return out;
}

Json try_fit(const std::vector<double>& xs, const std::vector<double>& ys, FitModel model) {
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isfinite(xs[i]) && std::isfinite(ys[i])) {
      fx.push_back(xs[i]);
      fy.push_back(ys[i]);
    }
  }
  try {
    return fit_json(fit_scaling(fx, fy, model));
  } catch (const Error& e) {
    return {{"error", to_string(e.kind())}};
  }
}

int run_tau_star(const ExperimentPreset& p, const fs::path& out, Json& result, std::ostream& log) {
  const Json points = divergence_sweep(p, log);
  result["points"] = points;
  result["fit_tau_star_vs_N"] = try_fit(column(points, "N"), column(points, "tau_star", "mean"), FitModel::Power);
  write_text_file(out / "tau_star.csv", emit_plot_table(result));
  return kExitOk;
}

int run_nk_star(const ExperimentPreset& p, const fs::path& out, Json& result, std::ostream& log) {
  const Json points = divergence_sweep(p, log);
  result["points"] = points;
  const auto Ns = column(points, "N");
  Json fits;
  for (const char* conv : {"nk_paper", "nk_exact"}) {
    Json fit = try_fit(Ns, column(points, conv, "mean"), FitModel::Logarithmic);
    if (!fit.contains("error")) {
      FitResult f;
      f.slope = fit["slope"].get<double>();
      f.slope_stderr = fit["slope_stderr"].get<double>();
      const Interval ci = logarithmic_base_interval(f);
      fit["base_ci95"] = {std::isfinite(ci.lo) ? Json(ci.lo) : Json(nullptr),
                          std::isfinite(ci.hi) ? Json(ci.hi) : Json(nullptr)};
      const double e = std::numbers::e;
      fit["contains_e"] = ci.lo <= e && e <= ci.hi;
      fit["contains_2.8011"] = ci.lo <= 2.8011 && 2.8011 <= ci.hi;
    }
    fits[conv] = fit;
  }
  result["fit_nk_vs_N"] = fits;
  write_text_file(out / "nk_star.csv", emit_plot_table(result));
  return kExitOk;
}

int run_closure(const ExperimentPreset& p, const fs::path& out, Json& result, std::ostream& log) {
  check_range(p);
  const Precision precision = p.precision ? parse_precision(*p.precision) : Precision::Standard;
  Json points = Json::array();
  for (int n = p.n_min; n <= p.n_max; ++n) {
    std::atomic<std::size_t> done{0};
    const ClosurePoint c = sweep_closure(n, sweep_options(p, precision, log, done));
    if (p.progress) log << "n=" << n << " N=" << c.N << " tau_K=" << c.tau_k.mean << "\n";
    points.push_back({{"n", c.n},
                      {"N", c.N},
                      {"orbit_size", c.orbit_size},
                      {"tau_k", stats_json(c.tau_k)},
                      {"aborted", c.aborted},
                      {"censored", c.censored}});
  }
  result["points"] = points;
  std::vector<double> ns;
  for (const auto& pt : points) ns.push_back(pt["n"].get<double>());
  const Json fit = try_fit(ns, column(points, "tau_k", "mean"), FitModel::Exponential);
  result["fit_tau_k_vs_n"] = fit;
  write_text_file(out / "closure.csv", emit_plot_table(result));
  write_text_file(out / "closure_fit.json", dump_json({{"config", preset_to_json(p)}, {"ln_fit_slope", fit}}));
  return kExitOk;
}

Json profile_json(const SubtendedProfile& s) {
  return {{"alpha", s.alpha}, {"mean_theta_x", s.mean_theta_x}, {"mean_theta_y", s.mean_theta_y},
          {"mean_p", s.mean_p}, {"inv_mean_p", s.inv_mean_p}};
}

int run_pgeom(const ExperimentPreset& p, const fs::path& out, Json& result) {
  const double alpha = evaluate_alpha<double>(parse_alpha(p.alpha));
  const SubtendedProfile prof = mean_p(alpha, p.quad_tol);
  result["profile"] = profile_json(prof);
  result["inv_mean_p"] = prof.inv_mean_p;
  result["relative_difference_from_e"] = (prof.inv_mean_p - std::numbers::e) / std::numbers::e;
  Json points = Json::array();
  points.push_back(profile_json(prof));
  if (p.scan) {
    const ScanResult scan = scan_mean_p(p.scan_min, p.scan_max, p.scan_step);
    Json grid = Json::array();
    for (const auto& s : scan.profiles) grid.push_back(profile_json(s));
    result["scan"] = {{"profiles", grid}, {"argmax_alpha", scan.profiles[scan.argmax].alpha},
                      {"max_mean_p", scan.profiles[scan.argmax].mean_p}};
    points = grid;
  }
  result["points"] = points;
  write_text_file(out / "pgeom.csv", emit_plot_table(result));
  return kExitOk;
}

int run_two_mass(const ExperimentPreset& p, const fs::path& out, Json& result) {
  const Precision precision = p.precision ? parse_precision(*p.precision) : Precision::Standard;
  const std::size_t configs = p.system ? 1 : p.configs;
  auto member = [&](std::size_t id) {
    const MassSystem sys = p.system ? *p.system : sample_mass_system(p.seed, id);
    return std::pair{sys, compare_event_sequences(sys, p.events, precision)};
  };
  const auto members = ensemble_map_parallel(configs, member, p.threads);
  Json rows = Json::array();
  std::size_t disagreements = 0, aborts = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    if (!m.ok()) {
      ++aborts;
      rows.push_back({{"id", i}, {"error", to_string(m.error->kind)}, {"message", m.error->message}});
      continue;
    }
    const auto& [sys, rep] = *m.value;
    if (rep.first_disagreement) ++disagreements;
    if (rep.mass_abort || rep.billiard_abort) ++aborts;
    rows.push_back({{"id", i},
                    {"system", mass_system_to_json(sys)},
                    {"alpha", mass_angle_map(sys.m1, sys.m2)},
                    {"compared", rep.compared},
                    {"first_disagreement", rep.first_disagreement ? Json(*rep.first_disagreement) : Json(nullptr)},
                    {"mass_abort", rep.mass_abort ? Json(to_string(rep.mass_abort->kind)) : Json(nullptr)},
                    {"billiard_abort", abort_to_json(rep.billiard_abort)},
                    {"max_relative_energy_drift", rep.max_energy_drift}});
  }
  result["configurations"] = rows;
  result["disagreements"] = disagreements;
  result["aborts"] = aborts;
  result["leg_convention"] = "WallLeft(x1=0) <-> V, WallRight(x2=L) <-> H, particle-particle <-> HYP";

  // event log of the first configuration
  const MassSystem first = p.system ? *p.system : sample_mass_system(p.seed, 0);
  std::ostringstream csv;
  write_event_header(csv);
  try {
    MassSimulator sim(first);
    for (std::uint64_t i = 0; i < p.events; ++i) write_event_row(csv, sim.step());
  } catch (const Error& e) {
    if (!is_numerical_abort(e.kind())) throw;
  }
  write_text_file(out / "events.csv", csv.str());
  return disagreements == 0 && aborts == 0 ? kExitOk : kExitNumerical;
}

template <class Real>
Json recover_impl(const TrajectoryConfig& cfg) {
  SimState<Real> state = init_trajectory<Real>(cfg);
  const RunSummary s = run_state(state, cfg.max_collisions, [](const CollisionRecord&) {});
  const SymbolicDirection d = state.direction();
  const Real recovered = recover_theta0(state.theta(), d.k, d.phi, state.triangle().alpha);
  Json j;
  j["collisions"] = s.collisions;
  j["abort"] = abort_to_json(s.abort);
  j["final"] = {{"theta", to_double(state.theta())}, {"k_exact", d.k}, {"phi", phi_code(d.phi)},
                {"k_paper", state.k_paper()}};
  j["recovered_theta0"] = to_double(recovered);
  j["abs_error"] = to_double(angular_distance(recovered, Real(cfg.theta0)));
  if (!rational_form(cfg.alpha)) {
    try {
      const std::int64_t k_max = (d.k < 0 ? -d.k : d.k) + 16;
      const SymbolicDirection back =
          decompose(state.theta(), Real(cfg.theta0), state.triangle().alpha, k_max, Real(1e-9));
      j["decompose_matches"] = back == d;
    } catch (const Error& e) {
      j["decompose_matches"] = false;
      j["decompose_error"] = to_string(e.kind());
    }
  }
  return j;
}

int run_recover(const ExperimentPreset& p, Json& result) {
  const TrajectoryConfig cfg = single_config(p);
  result["recovery"] = cfg.precision == Precision::Extended ? recover_impl<Quad>(cfg) : recover_impl<double>(cfg);
  return result["recovery"]["abort"].is_null() ? kExitOk : kExitNumerical;
}

}  // namespace

std::string emit_plot_table(const Json& result) {
  const std::string name = field(result, "experiment").get<std::string>();
  const Json& points = field(result, "points");
  if (!points.is_array()) throw Error(ErrorKind::Schema, "'points' must be an array");
  std::ostringstream out;
  CsvWriter csv(out);
  auto stat_row = [&](const char* key) {
    for (const auto& pt : points) {
      const Json& st = field(pt, key);
      csv.row({cell(field(pt, "n")), cell(field(pt, "N")), cell(field(st, "mean")), cell(field(st, "stderr"))});
    }
  };
  if (name == "tau-star") {
    csv.row({"n", "N", "tau_star_mean", "tau_star_stderr"});
    stat_row("tau_star");
  } else if (name == "nk-star") {
    csv.row({"n", "N", "nk_star_mean", "nk_star_stderr", "nk_exact_mean", "nk_exact_stderr"});
    for (const auto& pt : points) {
      const Json& a = field(pt, "nk_paper");
      const Json& b = field(pt, "nk_exact");
      csv.row({cell(field(pt, "n")), cell(field(pt, "N")), cell(field(a, "mean")), cell(field(a, "stderr")),
               cell(field(b, "mean")), cell(field(b, "stderr"))});
    }
  } else if (name == "closure") {
    csv.row({"n", "N", "tau_k_mean", "tau_k_stderr"});
    stat_row("tau_k");
  } else if (name == "khist") {
    csv.row({"K", "count", "frequency"});
    for (const auto& pt : points) {
      csv.row({cell(field(pt, "K")), cell(field(pt, "count")), cell(field(pt, "frequency"))});
    }
  } else if (name == "pgeom") {
    csv.row({"alpha", "mean_theta_x", "mean_theta_y", "mean_p", "inv_mean_p"});
    for (const auto& pt : points) {
      csv.row({cell(field(pt, "alpha")), cell(field(pt, "mean_theta_x")), cell(field(pt, "mean_theta_y")),
               cell(field(pt, "mean_p")), cell(field(pt, "inv_mean_p"))});
    }
  } else {
    throw Error(ErrorKind::Schema, "no plot table for experiment '" + name + "'");
  }
  return out.str();
}

int run_experiment(const ExperimentPreset& preset, const fs::path& out_dir, std::ostream& log) {
  Json result;
  result["experiment"] = preset.name;
  result["config"] = preset_to_json(preset);
  result["library_version"] = library_version();
  int status = kExitOk;
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::IO, "cannot create " + out_dir.string() + ": " + ec.message());

    if (preset.name == "simulate") {
      status = run_simulate(preset, out_dir, result);
    } else if (preset.name == "khist") {
      status = run_khist(preset, out_dir, result, log);
    } else if (preset.name == "tau-star") {
      status = run_tau_star(preset, out_dir, result, log);
    } else if (preset.name == "nk-star") {
      status = run_nk_star(preset, out_dir, result, log);
    } else if (preset.name == "closure") {
      status = run_closure(preset, out_dir, result, log);
    } else if (preset.name == "pgeom") {
      status = run_pgeom(preset, out_dir, result);
    } else if (preset.name == "two-mass-check") {
      status = run_two_mass(preset, out_dir, result);
    } else if (preset.name == "recover") {
      status = run_recover(preset, result);
    } else {
      throw Error(ErrorKind::Config, "unknown experiment '" + preset.name + "'");
    }
    result["status"] = status;
    write_text_file(out_dir / "result.json", dump_json(result));
    if (status != kExitOk) {
      write_text_file(out_dir / "error.json",
                      dump_json({{"experiment", preset.name}, {"status", status},
                                 {"error", "numerical abort or oracle disagreement; see result.json"},
                                 {"config", preset_to_json(preset)}}));
    }
    return status;
  } catch (const Error& e) {
    status = exit_code_for(e.kind());
    const Json err = {{"experiment", preset.name}, {"status", status}, {"error", to_string(e.kind())},
                      {"message", e.what()}, {"config", preset_to_json(preset)}};
    log << dump_json(err);
    try {
      write_text_file(out_dir / "error.json", dump_json(err));
    } catch (const Error&) {
      return kExitIO;
    }
    return status;
  }
}

}  // namespace rtb
