// rtbill: experiment runner for the right-triangle billiard library.

#include <charconv>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rtb/experiments.hpp"

namespace {

struct MassFlags {
  std::optional<double> m1, m2, L, x1, x2, v1, v2;

  bool any() const { return m1 || m2 || L || x1 || x2 || v1 || v2; }

  rtb::MassSystem build() const {
    rtb::MassSystem s;
    s.m1 = m1.value_or(s.m1);
    s.m2 = m2.value_or(s.m2);
    s.L = L.value_or(s.L);
    s.x1 = x1.value_or(s.x1);
    s.x2 = x2.value_or(s.x2);
    s.v1 = v1.value_or(s.v1);
    s.v2 = v2.value_or(s.v2);
    return s;
  }
};

// "a..b" or a single integer
void parse_n_range(const std::string& text, int& lo, int& hi) {
  auto to_int = [&](std::string_view v) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
      throw rtb::Error(rtb::ErrorKind::Config, "bad --n range '" + text + "'");
    }
    return out;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = to_int(text);
  } else {
    lo = to_int(std::string_view(text).substr(0, dots));
    hi = to_int(std::string_view(text).substr(dots + 2));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right-triangle billiard experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rtb::library_version()));

  rtb::ExperimentPreset preset;
  std::string out_dir = "out";
  std::string n_range;
  std::string precision;
  double theta0 = 0.0;
  bool quiet = false;
  MassFlags mass;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", preset.seed, "Ensemble seed")->capture_default_str();
    sub->add_option("--threads", preset.threads, "Worker threads (0: OpenMP default)");
    sub->add_option("--precision", precision, "standard | extended");
    sub->add_flag("--quiet", quiet, "No per-member progress on stderr");
  };
  auto trajectory = [&](CLI::App* sub) {
    sub->add_option("--alpha", preset.alpha, "golden | rational:M/N | golden-convergent:n | liouville:k | rad:v")
        ->capture_default_str();
    sub->add_option("--theta0", theta0, "Initial direction [rad]");
    sub->add_option("--start-wall", preset.start_wall, "H | V | HYP")->capture_default_str();
    sub->add_option("--start-s", preset.start_s, "Start fraction along the wall")->capture_default_str();
    sub->add_option("--collisions", preset.collisions, "Collision budget")->capture_default_str();
    sub->add_option("--eps-corner", preset.eps_corner, "Corner tolerance [length]")->capture_default_str();
  };
  auto sweep = [&](CLI::App* sub) {
    sub->add_option("--n", n_range, "Convergent range a..b")->default_str("5..20");
    sub->add_option("--ensemble", preset.ensemble, "Members per n")->default_val(100);
    sub->add_option("--cap-factor", preset.cap_factor, "Collision cap per member, in units of N")
        ->capture_default_str();
    sub->add_flag("--vary-start", preset.vary_start, "Sample the start point as well as theta0");
    sub->add_option("--start-s", preset.start_s, "Start fraction on H when not varied")->capture_default_str();
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    subs.emplace_back(name, sub);
    common(sub);
    return sub;
  };

  trajectory(add("simulate", "Single trajectory; collisions.csv + run.json"));

  CLI::App* khist = add("khist", "K histograms and localization fit");
  trajectory(khist);
  khist->add_option("--ensemble", preset.ensemble, "Trajectories")->capture_default_str();
  khist->add_flag("--vary-start", preset.vary_start, "Sample the start point as well as theta0");
  khist->add_option("--convention", preset.convention, "paper | exact (table column)")->capture_default_str();

  sweep(add("tau-star", "Divergence time against the next convergent"));
  sweep(add("nk-star", "Distinct K visited before divergence"));
  sweep(add("closure", "Angle-orbit closure time for golden convergents"));

  CLI::App* pgeom = add("pgeom", "Mean geometric double-leg probability");
  pgeom->add_option("--alpha", preset.alpha, "Apex angle spec")->capture_default_str();
  pgeom->add_option("--quad-tol", preset.quad_tol, "Quadrature tolerance")->capture_default_str();
  pgeom->add_flag("--scan", preset.scan, "Scan alpha over a grid");
  pgeom->add_option("--scan-min", preset.scan_min, "[rad]")->capture_default_str();
  pgeom->add_option("--scan-max", preset.scan_max, "[rad]")->capture_default_str();
  pgeom->add_option("--scan-step", preset.scan_step, "[rad]")->capture_default_str();

  CLI::App* two = add("two-mass-check", "Two-mass events against billiard walls");
  two->add_option("--m1", mass.m1);
  two->add_option("--m2", mass.m2);
  two->add_option("--length", mass.L, "Box length");
  two->add_option("--x1", mass.x1);
  two->add_option("--x2", mass.x2);
  two->add_option("--v1", mass.v1);
  two->add_option("--v2", mass.v2);
  two->add_option("--configs", preset.configs, "Random configurations when no system is given")
      ->capture_default_str();
  two->add_option("--events", preset.events, "Events per configuration")->capture_default_str();

  trajectory(add("recover", "Recover theta0 from the final state"));

  CLI::App* plot = app.add_subcommand("plot-table", "Flat CSV from a result.json");
  std::string plot_in, plot_out;
  plot->add_option("result", plot_in, "result.json")->required();
  plot->add_option("-o,--output", plot_out, "Output CSV (stdout when absent)");
  plot->add_flag("--quiet", quiet, "Accepted for symmetry; plot-table prints nothing else");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? rtb::kExitOk : rtb::kExitConfig;
  }

  try {
    if (plot->parsed()) {
      const std::string table = rtb::emit_plot_table(rtb::Json::parse(rtb::read_text_file(plot_in)));
      if (plot_out.empty()) {
        std::cout << table;
      } else {
        rtb::write_text_file(plot_out, table);
      }
      return rtb::kExitOk;
    }

    auto given = [](CLI::App* sub, const char* flag) {
      const CLI::Option* o = sub->get_option_no_throw(flag);
      return o != nullptr && o->count() > 0;
    };
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      preset.name = name;
      if (given(sub, "--theta0")) preset.theta0 = theta0;
      if (!precision.empty()) preset.precision = precision;
      if (given(sub, "--n")) parse_n_range(n_range, preset.n_min, preset.n_max);
      if (mass.any()) preset.system = mass.build();
      preset.progress = !quiet;
    }
    return rtb::run_experiment(preset, out_dir, std::cerr);
  } catch (const rtb::Error& e) {
    std::cerr << rtb::to_string(e.kind()) << ": " << e.what() << "\n";
    return rtb::exit_code_for(e.kind());
  } catch (const rtb::Json::exception& e) {
    std::cerr << "SchemaError: " << e.what() << "\n";
    return rtb::kExitConfig;
  }
}
