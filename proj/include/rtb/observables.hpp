#pragma once

// Measured quantities: divergence time τ*, visited-K count n*_K, angle-orbit
// closure time τ_K, K histograms, and the least-squares fits used on them.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rtb/alpha.hpp"
#include "rtb/ensemble.hpp"
#include "rtb/simulation.hpp"

namespace rtb {

enum class KConvention { Exact, Paper };

std::string_view to_string(KConvention c) noexcept;

inline std::int64_t k_of(const CollisionRecord& r, KConvention c) {
  return c == KConvention::Exact ? r.k_exact : r.k_paper;
}

struct KHistogram {
  std::map<std::int64_t, std::uint64_t> counts;
  std::int64_t k0 = 0;
  std::uint64_t total = 0;
  KConvention convention = KConvention::Paper;

  void add(std::int64_t k, std::uint64_t n = 1) {
    counts[k] += n;
    total += n;
  }
  void merge(const KHistogram& other);
  std::uint64_t count(std::int64_t k) const;
  double mean() const;
  std::int64_t max_abs() const;
};

KHistogram k_histogram(std::span<const CollisionRecord> records, KConvention convention);
/// Ensemble members share the K0 = 0 gauge.
KHistogram k_histogram(const std::vector<std::vector<CollisionRecord>>& ensemble,
                       KConvention convention);

struct SymmetryViolation {
  std::int64_t offset;
  std::uint64_t above;  // count(K0 + offset)
  std::uint64_t below;  // count(K0 − offset)
  double bound;
};

/// Offsets k ≥ 1 where |c(K0+k) − c(K0−k)| > 4·sqrt(c(K0+k) + c(K0−k)).
std::vector<SymmetryViolation> symmetry_violations(const KHistogram& hist);

/// Mean with a batch-means standard error, for autocorrelated series.
class BatchMeans {
 public:
  explicit BatchMeans(std::uint64_t batch_size) : batch_size_(batch_size == 0 ? 1 : batch_size) {}

  void add(double x);
  std::uint64_t count() const { return n_; }
  double mean() const;
  /// Standard error from the completed batches; NaN with fewer than two.
  double standard_error() const;
  std::uint64_t batches() const { return batch_means_.size(); }

 private:
  std::uint64_t batch_size_;
  std::uint64_t n_ = 0;
  double sum_ = 0.0;
  double batch_sum_ = 0.0;
  std::uint64_t in_batch_ = 0;
  std::vector<double> batch_means_;
};

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

SampleStats sample_stats(std::span<const double> xs);

enum class FitModel { Exponential, Power, Logarithmic };

std::string_view to_string(FitModel m) noexcept;

struct FitResult {
  FitModel model = FitModel::Exponential;
  // Exponential: rate b in y = e^{a + b x} (or decay length ξ for localization).
  // Power: exponent b in y = e^a x^b. Logarithmic: base such that y = log_base(x) + a.
  double parameter = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope = 0.0;  // slope of the linearized fit
  double slope_stderr = 0.0;
  std::size_t points = 0;
  bool flagged = false;  // poor or undefined goodness of fit
};

/// counts ∝ exp(−|K − K0|/ξ), least squares on log counts. Needs ≥ 5 visited K.
FitResult fit_localization(const KHistogram& hist);

/// Least squares on the model's linearizing transform. Needs ≥ 4 points.
FitResult fit_scaling(std::span<const double> xs, std::span<const double> ys, FitModel model);

/// Base interval for a logarithmic fit, from slope ± z·stderr.
struct Interval {
  double lo;
  double hi;
};
Interval logarithmic_base_interval(const FitResult& fit, double z = 1.96);

/// log(N) / log(1/p).
double predicted_nk(double N, double p);

// --- divergence / closure -----------------------------------------------------

struct StartPoint {
  Wall wall = Wall::Horizontal;
  double s = 0.37;
};

struct DivergenceResult {
  std::optional<std::uint64_t> tau_star;  // empty: no divergence within the cap
  std::uint64_t nk_paper = 0;             // distinct k_paper up to τ* (K0 included)
  std::uint64_t nk_exact = 0;
  std::uint64_t compared = 0;             // collisions compared
};

/// Runs two trajectories in lockstep and finds the first collision index at
/// which their wall sequences differ. n*_K is taken from trajectory `a`.
DivergenceResult compare_wall_sequences(const TrajectoryConfig& a, const TrajectoryConfig& b,
                                        std::uint64_t max_collisions);

/// α = π·F_n/F_{n+1} against α = π·F_{n+1}/F_{n+2}.
DivergenceResult divergence(double theta0, StartPoint start, int n, Precision precision,
                            std::uint64_t max_collisions, double eps_corner = 1e-12);

std::optional<std::uint64_t> tau_star(double theta0, StartPoint start, int n, Precision precision,
                                      std::uint64_t max_collisions);

struct NkStar {
  std::uint64_t paper = 0;
  std::uint64_t exact = 0;
};
NkStar nk_star(double theta0, StartPoint start, int n, Precision precision,
               std::uint64_t max_collisions);

/// Integer label of the realized angle ±θ0 + πj/N for α = πM/N: (sign, j mod 2N).
std::uint64_t angle_key(SymbolicDirection d, const RationalAlpha& alpha);

/// Distinct realized angles {φ + Kα mod 2π} by enumeration over K mod 2N.
std::uint64_t angle_orbit_size(const RationalAlpha& alpha);

struct ClosureResult {
  std::optional<std::uint64_t> tau_k;  // empty: cap hit first
  std::uint64_t orbit_size = 0;
  std::uint64_t visited = 0;
  double fraction = 0.0;  // visited / orbit_size
};

/// First collision index at which the visited angle set covers the orbit.
ClosureResult tau_k_closure(const TrajectoryConfig& cfg);

// --- ensemble sweeps ----------------------------------------------------------

struct SweepOptions {
  std::size_t ensemble = 100;
  std::uint64_t seed = 42;
  Precision precision = Precision::Standard;
  bool vary_start = false;
  double start_s = 0.37;
  std::uint64_t cap_factor = 1000;  // cap = cap_factor · N
  int threads = 0;
  bool parallel = true;
  std::function<void()> on_member;  // progress hook, called once per finished member
};

struct DivergencePoint {
  int n = 0;
  std::int64_t N = 0;  // denominator of the convergent-n approximant
  SampleStats tau;
  SampleStats nk_paper;
  SampleStats nk_exact;
  std::size_t aborted = 0;
  std::size_t censored = 0;  // no divergence within the cap
};

DivergencePoint sweep_divergence(int n, const SweepOptions& opt);

struct ClosurePoint {
  int n = 0;
  std::int64_t N = 0;
  std::uint64_t orbit_size = 0;
  SampleStats tau_k;
  std::size_t aborted = 0;
  std::size_t censored = 0;
};

ClosurePoint sweep_closure(int n, const SweepOptions& opt);

}  // namespace rtb
