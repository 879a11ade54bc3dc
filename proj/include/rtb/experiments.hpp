#pragma once

// Experiment presets behind the rtbill command line. Every preset writes a
// result.json that echoes its full input configuration, plus CSV tables.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "rtb/io.hpp"
#include "rtb/two_mass.hpp"

namespace rtb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIO = 4;

int exit_code_for(ErrorKind kind) noexcept;

struct ExperimentPreset {
  // simulate, khist, tau-star, nk-star, closure, pgeom, two-mass-check, recover
  std::string name;

  std::string alpha = "golden";
  std::optional<double> theta0;  // sampled per member when absent
  std::string start_wall = "H";
  double start_s = 0.37;
  std::uint64_t collisions = 1000;
  std::optional<std::string> precision;  // golden defaults to extended
  double eps_corner = 1e-12;

  std::uint64_t seed = 42;
  std::size_t ensemble = 1;
  int threads = 0;
  bool vary_start = false;

  int n_min = 5;
  int n_max = 20;
  std::uint64_t cap_factor = 1000;

  std::string convention = "paper";

  double quad_tol = 1e-12;
  bool scan = false;
  double scan_min = 0.05;
  double scan_max = 3.09;
  double scan_step = 0.01;

  std::optional<MassSystem> system;  // random systems when absent
  std::size_t configs = 1;
  std::uint64_t events = 10000;

  bool progress = false;
};

Json preset_to_json(const ExperimentPreset& preset);

/// Runs the preset into out_dir. Returns a process exit code; on failure an
/// error.json is written next to the results.
int run_experiment(const ExperimentPreset& preset, const std::filesystem::path& out_dir,
                   std::ostream& log);

/// Flat CSV (one row per x) from a result document; SchemaError when the
/// document is not a recognized experiment result.
std::string emit_plot_table(const Json& result);

/// Random but valid mass system for member `member` of an ensemble seeded by `seed`.
MassSystem sample_mass_system(std::uint64_t seed, std::uint64_t member);

}  // namespace rtb
