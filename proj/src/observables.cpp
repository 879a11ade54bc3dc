#include "rtb/observables.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

namespace rtb {

std::string_view to_string(KConvention c) noexcept { return c == KConvention::Exact ? "exact" : "paper"; }

std::string_view to_string(FitModel m) noexcept {
  switch (m) {
    case FitModel::Exponential: return "exponential";
    case FitModel::Power: return "power";
    case FitModel::Logarithmic: return "logarithmic";
  }
  return "?";
}

// --- histograms ----------------------------------------------------------------

void KHistogram::merge(const KHistogram& other) {
  for (const auto& [k, c] : other.counts) add(k, c);
}

std::uint64_t KHistogram::count(std::int64_t k) const {
  const auto it = counts.find(k);
  return it == counts.end() ? 0 : it->second;
}

double KHistogram::mean() const {
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  long double sum = 0;
  for (const auto& [k, c] : counts) sum += static_cast<long double>(k) * c;
  return static_cast<double>(sum / total);
}

std::int64_t KHistogram::max_abs() const {
  std::int64_t m = 0;
  for (const auto& [k, c] : counts) m = std::max(m, k < 0 ? -k : k);
  return m;
}

KHistogram k_histogram(std::span<const CollisionRecord> records, KConvention convention) {
  KHistogram h;
  h.convention = convention;
  for (const auto& r : records) h.add(k_of(r, convention));
  return h;
}

KHistogram k_histogram(const std::vector<std::vector<CollisionRecord>>& ensemble,
                       KConvention convention) {
  KHistogram h;
  h.convention = convention;
  for (const auto& member : ensemble) h.merge(k_histogram(member, convention));
  return h;
}

std::vector<SymmetryViolation> symmetry_violations(const KHistogram& hist) {
  std::vector<SymmetryViolation> out;
  const std::int64_t reach = hist.max_abs() + std::abs(hist.k0);
  for (std::int64_t k = 1; k <= reach; ++k) {
    const std::uint64_t above = hist.count(hist.k0 + k);
    const std::uint64_t below = hist.count(hist.k0 - k);
    const double bound = 4.0 * std::sqrt(static_cast<double>(above + below));
    const double diff = std::abs(static_cast<double>(above) - static_cast<double>(below));
    if (diff > bound) out.push_back({k, above, below, bound});
  }
  return out;
}

void BatchMeans::add(double x) {
  ++n_;
  sum_ += x;
  batch_sum_ += x;
  if (++in_batch_ == batch_size_) {
    batch_means_.push_back(batch_sum_ / static_cast<double>(batch_size_));
    batch_sum_ = 0.0;
    in_batch_ = 0;
  }
}

double BatchMeans::mean() const {
  return n_ == 0 ? std::numeric_limits<double>::quiet_NaN() : sum_ / static_cast<double>(n_);
}

double BatchMeans::standard_error() const {
  const auto b = batch_means_.size();
  if (b < 2) return std::numeric_limits<double>::quiet_NaN();
  return sample_stats(batch_means_).std_error;
}

SampleStats sample_stats(std::span<const double> xs) {
  SampleStats s;
  s.n = xs.size();
  if (xs.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) {
    s.std_error = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std_error = std::sqrt(ss / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
  return s;
}

// --- fits ------------------------------------------------------------------------

namespace {

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
  double slope_stderr;
  bool zero_variance;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::DegenerateFit, "abscissae have zero spread");
  LineFit f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += r * r;
  }
  f.zero_variance = !(syy > 1e-300);
  f.r_squared = f.zero_variance ? 0.0 : std::max(0.0, 1.0 - ss_res / syy);
  f.slope_stderr = xs.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return f;
}

}  // namespace

FitResult fit_localization(const KHistogram& hist) {
  if (hist.counts.size() < 5) {
    throw Error(ErrorKind::DegenerateFit, "localization fit needs at least 5 visited K values");
  }
  std::vector<double> xs, ys;
  for (const auto& [k, c] : hist.counts) {
    if (c == 0) continue;
    xs.push_back(static_cast<double>(std::abs(k - hist.k0)));
    ys.push_back(std::log(static_cast<double>(c)));
  }
  const LineFit line = least_squares(xs, ys);
  FitResult f;
  f.model = FitModel::Exponential;
  f.slope = line.slope;
  f.slope_stderr = line.slope_stderr;
  f.intercept = line.intercept;
  f.r_squared = line.r_squared;
  f.points = xs.size();
  f.parameter = line.slope < 0.0 ? -1.0 / line.slope : std::numeric_limits<double>::infinity();
  f.flagged = line.zero_variance || line.slope >= 0.0 || line.r_squared < 0.5;
  return f;
}

FitResult fit_scaling(std::span<const double> xs, std::span<const double> ys, FitModel model) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::DegenerateFit, "xs and ys differ in length");
  if (xs.size() < 4) throw Error(ErrorKind::DegenerateFit, "scaling fit needs at least 4 points");
  std::vector<double> tx(xs.size()), ty(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool log_x = model != FitModel::Exponential;
    const bool log_y = model != FitModel::Logarithmic;
    if ((log_x && !(xs[i] > 0.0)) || (log_y && !(ys[i] > 0.0))) {
      throw Error(ErrorKind::DegenerateFit, "non-positive value under a logarithm");
    }
    tx[i] = log_x ? std::log(xs[i]) : xs[i];
    ty[i] = log_y ? std::log(ys[i]) : ys[i];
  }
  const LineFit line = least_squares(tx, ty);
  FitResult f;
  f.model = model;
  f.slope = line.slope;
  f.slope_stderr = line.slope_stderr;
  f.intercept = line.intercept;
  f.r_squared = line.r_squared;
  f.points = xs.size();
  if (model == FitModel::Logarithmic) {
    if (line.slope == 0.0) throw Error(ErrorKind::DegenerateFit, "flat logarithmic fit has no base");
    f.parameter = std::exp(1.0 / line.slope);
  } else {
    f.parameter = line.slope;
  }
  f.flagged = line.zero_variance || line.r_squared < 0.5;
  return f;
}

Interval logarithmic_base_interval(const FitResult& fit, double z) {
  const double inf = std::numeric_limits<double>::infinity();
  const double hi_slope = fit.slope + z * fit.slope_stderr;
  const double lo_slope = fit.slope - z * fit.slope_stderr;
  // base = exp(1/slope) is decreasing in slope on each side of zero
  const double lo = hi_slope > 0.0 ? std::exp(1.0 / hi_slope) : 0.0;
  const double hi = lo_slope > 0.0 ? std::exp(1.0 / lo_slope) : inf;
  return {lo, hi};
}

double predicted_nk(double N, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::Domain, "p must lie in (0, 1)");
  if (!(N > 1.0)) throw Error(ErrorKind::Domain, "N must exceed 1");
  return std::log(N) / std::log(1.0 / p);
}

// --- divergence ------------------------------------------------------------------

namespace {

template <class Real>
DivergenceResult compare_impl(const TrajectoryConfig& a, const TrajectoryConfig& b,
                              std::uint64_t max_collisions) {
  SimState<Real> sa = init_trajectory<Real>(a);
  SimState<Real> sb = init_trajectory<Real>(b);
  std::unordered_set<std::int64_t> seen_paper{0};
  std::unordered_set<std::int64_t> seen_exact{0};
  DivergenceResult r;
  for (std::uint64_t i = 0; i < max_collisions; ++i) {
    const CollisionRecord ra = sa.step();
    const CollisionRecord rb = sb.step();
    seen_paper.insert(ra.k_paper);
    seen_exact.insert(ra.k_exact);
    r.compared = ra.index;
    if (ra.wall != rb.wall) {
      r.tau_star = ra.index;
      break;
    }
  }
  r.nk_paper = seen_paper.size();
  r.nk_exact = seen_exact.size();
  return r;
}

TrajectoryConfig convergent_config(double theta0, StartPoint start, int n, Precision precision,
                                   double eps_corner) {
  TrajectoryConfig cfg;
  cfg.alpha = GoldenConvergentAlpha{n};
  cfg.theta0 = theta0;
  cfg.start_wall = start.wall;
  cfg.start_s = start.s;
  cfg.precision = precision;
  cfg.eps_corner = eps_corner;
  return cfg;
}

}  // namespace

DivergenceResult compare_wall_sequences(const TrajectoryConfig& a, const TrajectoryConfig& b,
                                        std::uint64_t max_collisions) {
  if (a.precision != b.precision) {
    throw Error(ErrorKind::Config, "compared trajectories must share a precision");
  }
  if (a.precision == Precision::Extended) return compare_impl<Quad>(a, b, max_collisions);
  return compare_impl<double>(a, b, max_collisions);
}

DivergenceResult divergence(double theta0, StartPoint start, int n, Precision precision,
                            std::uint64_t max_collisions, double eps_corner) {
  if (n < 2) throw Error(ErrorKind::Config, "convergent index must be at least 2");
  return compare_wall_sequences(convergent_config(theta0, start, n, precision, eps_corner),
                                convergent_config(theta0, start, n + 1, precision, eps_corner),
                                max_collisions);
}

std::optional<std::uint64_t> tau_star(double theta0, StartPoint start, int n, Precision precision,
                                      std::uint64_t max_collisions) {
  return divergence(theta0, start, n, precision, max_collisions).tau_star;
}

NkStar nk_star(double theta0, StartPoint start, int n, Precision precision,
               std::uint64_t max_collisions) {
  const DivergenceResult r = divergence(theta0, start, n, precision, max_collisions);
  return {r.nk_paper, r.nk_exact};
}

// --- closure ---------------------------------------------------------------------

namespace {

std::uint64_t orbit_modulus(const RationalAlpha& alpha) {
  if (alpha.N <= 0 || alpha.N > 100'000'000) {
    throw Error(ErrorKind::Range, "closure needs a denominator in 1..1e8");
  }
  return static_cast<std::uint64_t>(2 * alpha.N);
}

}  // namespace

std::uint64_t angle_key(SymbolicDirection d, const RationalAlpha& alpha) {
  const std::uint64_t mod = orbit_modulus(alpha);
  const auto N = static_cast<std::uint64_t>(alpha.N);
  const bool negative = d.phi == PhiIndex::P1 || d.phi == PhiIndex::P2;
  const std::uint64_t base = (d.phi == PhiIndex::P2 || d.phi == PhiIndex::P3) ? N : 0;
  const auto m = static_cast<BigInt>(mod);
  BigInt km = (static_cast<BigInt>(d.k) % m) * (alpha.M % m) % m;
  if (km < 0) km += m;
  const auto j = static_cast<std::uint64_t>((static_cast<BigInt>(base) + km) % m);
  return (negative ? mod : 0) + j;
}

std::uint64_t angle_orbit_size(const RationalAlpha& alpha) {
  const std::uint64_t mod = orbit_modulus(alpha);
  std::vector<bool> seen(2 * mod, false);
  std::uint64_t distinct = 0;
  for (PhiIndex p : kAllPhi) {
    for (std::uint64_t k = 0; k < mod; ++k) {
      const std::uint64_t key = angle_key({p, static_cast<std::int64_t>(k)}, alpha);
      if (!seen[key]) {
        seen[key] = true;
        ++distinct;
      }
    }
  }
  return distinct;
}

namespace {

template <class Real>
ClosureResult closure_impl(const TrajectoryConfig& cfg, const RationalAlpha& alpha) {
  ClosureResult r;
  r.orbit_size = angle_orbit_size(alpha);
  std::vector<bool> seen(2 * orbit_modulus(alpha), false);
  SimState<Real> state = init_trajectory<Real>(cfg);
  seen[angle_key(state.direction(), alpha)] = true;
  r.visited = 1;
  while (r.visited < r.orbit_size && state.index() < cfg.max_collisions) {
    state.step();
    const std::uint64_t key = angle_key(state.direction(), alpha);
    if (!seen[key]) {
      seen[key] = true;
      ++r.visited;
    }
  }
  if (r.visited == r.orbit_size) r.tau_k = state.index();
  r.fraction = static_cast<double>(r.visited) / static_cast<double>(r.orbit_size);
  return r;
}

}  // namespace

ClosureResult tau_k_closure(const TrajectoryConfig& cfg) {
  const auto alpha = rational_form(cfg.alpha);
  if (!alpha) throw Error(ErrorKind::Config, "closure time needs a rational alpha");
  if (cfg.precision == Precision::Extended) return closure_impl<Quad>(cfg, *alpha);
  return closure_impl<double>(cfg, *alpha);
}

// --- sweeps ----------------------------------------------------------------------

namespace {

template <class Fn>
auto dispatch(const SweepOptions& opt, Fn&& fn) {
  auto tracked = [&](std::size_t id) {
    auto out = fn(id);
    if (opt.on_member) {
#pragma omp critical(rtb_progress)
      opt.on_member();
    }
    return out;
  };
  return opt.parallel ? ensemble_map_parallel(opt.ensemble, tracked, opt.threads)
                      : ensemble_map_serial(opt.ensemble, tracked);
}

}  // namespace

DivergencePoint sweep_divergence(int n, const SweepOptions& opt) {
  DivergencePoint point;
  point.n = n;
  point.N = static_cast<std::int64_t>(golden_convergent(n).N);
  const std::uint64_t cap = opt.cap_factor * static_cast<std::uint64_t>(point.N);
  auto members = dispatch(opt, [&](std::size_t id) {
    const EnsembleStart st = sample_member_start(opt.seed, id, opt.vary_start, opt.start_s);
    return divergence(st.theta0, {st.wall, st.s}, n, opt.precision, cap);
  });
  std::vector<double> tau, nkp, nke;
  for (const auto& m : members) {
    if (!m.ok()) {
      ++point.aborted;
      continue;
    }
    if (!m.value->tau_star) {
      ++point.censored;
      continue;
    }
    tau.push_back(static_cast<double>(*m.value->tau_star));
    nkp.push_back(static_cast<double>(m.value->nk_paper));
    nke.push_back(static_cast<double>(m.value->nk_exact));
  }
  point.tau = sample_stats(tau);
  point.nk_paper = sample_stats(nkp);
  point.nk_exact = sample_stats(nke);
  return point;
}

ClosurePoint sweep_closure(int n, const SweepOptions& opt) {
  ClosurePoint point;
  point.n = n;
  const Convergent c = golden_convergent(n);
  point.N = static_cast<std::int64_t>(c.N);
  point.orbit_size = angle_orbit_size({c.M, c.N});
  const std::uint64_t cap = opt.cap_factor * static_cast<std::uint64_t>(point.N);
  auto members = dispatch(opt, [&](std::size_t id) {
    const EnsembleStart st = sample_member_start(opt.seed, id, opt.vary_start, opt.start_s);
    TrajectoryConfig cfg;
    cfg.alpha = GoldenConvergentAlpha{n};
    cfg.theta0 = st.theta0;
    cfg.start_wall = st.wall;
    cfg.start_s = st.s;
    cfg.precision = opt.precision;
    cfg.max_collisions = cap;
    return tau_k_closure(cfg);
  });
  std::vector<double> tau;
  for (const auto& m : members) {
    if (!m.ok()) {
      ++point.aborted;
    } else if (!m.value->tau_k) {
      ++point.censored;
    } else {
      tau.push_back(static_cast<double>(*m.value->tau_k));
    }
  }
  point.tau_k = sample_stats(tau);
  return point;
}

}  // namespace rtb
