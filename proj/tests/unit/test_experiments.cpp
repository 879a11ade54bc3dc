#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "rtb/experiments.hpp"

using namespace rtb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rtb_unit_" + name);
  fs::remove_all(p);
  return p;
}

Json load(const fs::path& p) { return Json::parse(read_text_file(p)); }

}  // namespace

TEST_CASE("pgeom preset") {
  ExperimentPreset p;
  p.name = "pgeom";
  std::ostringstream log;
  const fs::path out = scratch("pgeom");
  CHECK(run_experiment(p, out, log) == kExitOk);
  const Json r = load(out / "result.json");
  CHECK(r["config"]["alpha"] == "golden");
  CHECK(std::abs(r["inv_mean_p"].get<double>() - 2.8019715276519399) < 1e-9);
  const std::string csv = read_text_file(out / "pgeom.csv");
  CHECK(csv.rfind("alpha,mean_theta_x,mean_theta_y,mean_p,inv_mean_p\n", 0) == 0);
}

TEST_CASE("simulate preset with zero collisions") {
  ExperimentPreset p;
  p.name = "simulate";
  p.alpha = "rational:1/2";
  p.theta0 = 1.0;
  p.collisions = 0;
  std::ostringstream log;
  const fs::path out = scratch("sim0");
  CHECK(run_experiment(p, out, log) == kExitOk);
  CHECK(read_text_file(out / "collisions.csv") == "index,wall,x,y,k_exact,k_paper,phi,cum_path\n");
  const Json run = load(out / "run.json");
  CHECK(run["config"]["alpha"] == "rational:1/2");
  CHECK(run["collisions"] == 0);
}

TEST_CASE("config errors exit with 2 and write error.json") {
  ExperimentPreset p;
  p.name = "simulate";
  p.alpha = "rational:2/4";
  std::ostringstream log;
  const fs::path out = scratch("bad");
  CHECK(run_experiment(p, out, log) == kExitConfig);
  const Json e = load(out / "error.json");
  CHECK(e["error"] == "ConfigError");
  CHECK(e["config"]["alpha"] == "rational:2/4");

  p.name = "nonsense";
  CHECK(run_experiment(p, scratch("bad2"), log) == kExitConfig);
}

TEST_CASE("numerical abort exits with 3") {
  ExperimentPreset p;
  p.name = "simulate";
  p.alpha = "rad:1.5707963267948966";
  // from the middle of the horizontal leg straight at vertex Y
  p.theta0 = std::atan(2.0);
  p.start_s = 0.5;
  std::ostringstream log;
  const fs::path out = scratch("num");
  CHECK(run_experiment(p, out, log) == kExitNumerical);
  CHECK(load(out / "result.json")["run"]["abort"]["kind"] == "CornerHit");
  CHECK(fs::exists(out / "error.json"));
  CHECK(exit_code_for(ErrorKind::CornerHit) == kExitNumerical);
  CHECK(exit_code_for(ErrorKind::IO) == kExitIO);
  CHECK(exit_code_for(ErrorKind::Schema) == kExitConfig);
}

TEST_CASE("tau-star preset is deterministic and tabulates") {
  ExperimentPreset p;
  p.name = "tau-star";
  p.n_min = 5;
  p.n_max = 8;
  p.ensemble = 12;
  p.precision = "standard";
  std::ostringstream log;
  const fs::path a = scratch("tau_a");
  const fs::path b = scratch("tau_b");
  CHECK(run_experiment(p, a, log) == kExitOk);
  p.threads = 3;
  CHECK(run_experiment(p, b, log) == kExitOk);
  CHECK(read_text_file(a / "tau_star.csv") == read_text_file(b / "tau_star.csv"));
  const std::string csv = read_text_file(a / "tau_star.csv");
  CHECK(csv.rfind("n,N,tau_star_mean,tau_star_stderr\n", 0) == 0);
  const Json r = load(a / "result.json");
  CHECK(r["points"].size() == 4);
  CHECK(emit_plot_table(r) == csv);
}

TEST_CASE("khist and closure tables") {
  std::ostringstream log;
  ExperimentPreset k;
  k.name = "khist";
  k.theta0 = 0.7;
  k.collisions = 20000;
  const fs::path kd = scratch("khist");
  CHECK(run_experiment(k, kd, log) == kExitOk);
  CHECK(read_text_file(kd / "khist.csv").rfind("K,count,frequency\n", 0) == 0);

  ExperimentPreset c;
  c.name = "closure";
  c.n_min = 4;
  c.n_max = 8;
  c.ensemble = 8;
  const fs::path cd = scratch("closure");
  CHECK(run_experiment(c, cd, log) == kExitOk);
  CHECK(read_text_file(cd / "closure.csv").rfind("n,N,tau_k_mean,tau_k_stderr\n", 0) == 0);
  const Json side = load(cd / "closure_fit.json");
  CHECK(side["ln_fit_slope"].contains("slope"));
  CHECK(side["config"]["experiment"] == "closure");
}

TEST_CASE("recover and two-mass presets") {
  std::ostringstream log;
  ExperimentPreset r;
  r.name = "recover";
  r.theta0 = 0.9;
  r.collisions = 10000;
  const fs::path rd = scratch("recover");
  CHECK(run_experiment(r, rd, log) == kExitOk);
  const Json j = load(rd / "result.json");
  CHECK(j["recovery"]["abs_error"].get<double>() < 1e-9);
  CHECK(j["recovery"]["decompose_matches"] == true);

  ExperimentPreset t;
  t.name = "two-mass-check";
  t.configs = 4;
  t.events = 2000;
  const fs::path td = scratch("two");
  CHECK(run_experiment(t, td, log) == kExitOk);
  CHECK(read_text_file(td / "events.csv").rfind("index,kind,time,x1,x2,v1,v2\n", 0) == 0);
}

TEST_CASE("emit_plot_table schema errors") {
  CHECK_THROWS_AS(emit_plot_table(Json::object()), Error);
  CHECK_THROWS_AS(emit_plot_table(Json{{"experiment", "simulate"}, {"points", Json::array()}}), Error);
  CHECK_THROWS_AS(emit_plot_table(Json{{"experiment", "tau-star"}, {"points", Json::array({Json{{"n", 1}}})}}), Error);
}

TEST_CASE("io helpers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(parse_double("2.5e-3") == 0.0025);
  CHECK_THROWS_AS(parse_double("x"), Error);
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("plain") == "plain");
  try {
    read_text_file("/nonexistent/file");
    FAIL("expected IOFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IO);
  }
}
