#include "rtb/geom_probability.hpp"

#include <cmath>
#include <cstdint>

#include <omp.h>

namespace rtb {

double subtended_angle(Wall leg, double s, double alpha) {
  if (!(alpha > 0.0) || !(alpha < pi<double>())) throw Error(ErrorKind::Domain, "alpha must lie in (0, pi)");
  const double c = std::cos(alpha / 2.0);
  const double sn = std::sin(alpha / 2.0);
  switch (leg) {
    case Wall::Horizontal:
      if (!(s >= 0.0) || !(s < c)) throw Error(ErrorKind::Domain, "x outside [0, cos(alpha/2))");
      return std::atan(sn / (c - s));
    case Wall::Vertical:
      if (!(s >= 0.0) || !(s < sn)) throw Error(ErrorKind::Domain, "y outside [0, sin(alpha/2))");
      return std::atan(c / (sn - s));
    case Wall::Hypotenuse:
      break;
  }
  throw Error(ErrorKind::Domain, "subtended angle is defined on the legs only");
}

SubtendedProfile mean_p(double alpha, double quad_tol) {
  if (!(alpha > 0.0) || !(alpha < pi<double>())) throw Error(ErrorKind::Domain, "alpha must lie in (0, pi)");
  if (!(quad_tol > 0.0)) throw Error(ErrorKind::Domain, "quad_tol must be positive");
  const double c = std::cos(alpha / 2.0);
  const double sn = std::sin(alpha / 2.0);
  const QuadratureOptions opt{quad_tol * std::min(c, sn), 4'000'000};

  // Integrate over the distance u to the far end of the leg, u ∈ [0, L]; the
  // u → 0 end is where the derivative blows up and bisection concentrates.
  // atan2 gives the one-sided limit π/2 at u = 0.
  const double ix = adaptive_simpson([&](double u) { return std::atan2(sn, u); }, 0.0, c, opt);
  const double iy = adaptive_simpson([&](double h) { return std::atan2(c, h); }, 0.0, sn, opt);

  SubtendedProfile p;
  p.alpha = alpha;
  p.mean_theta_x = ix / c;
  p.mean_theta_y = iy / sn;
  p.mean_p = (p.mean_theta_x + p.mean_theta_y) / (2.0 * pi<double>());
  p.inv_mean_p = 1.0 / p.mean_p;
  return p;
}

namespace {

std::vector<double> grid(double alpha_min, double alpha_max, double step) {
  if (!(alpha_min > 0.0) || !(alpha_max < pi<double>()) || !(alpha_min < alpha_max)) {
    throw Error(ErrorKind::Domain, "scan needs 0 < alpha_min < alpha_max < pi");
  }
  if (!(step > 0.0)) throw Error(ErrorKind::Domain, "scan step must be positive");
  std::vector<double> out;
  for (std::int64_t i = 0;; ++i) {
    const double a = alpha_min + static_cast<double>(i) * step;
    if (a > alpha_max + 0.5 * step) break;
    out.push_back(std::min(a, alpha_max));
  }
  return out;
}

std::size_t argmax(const std::vector<SubtendedProfile>& ps) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (ps[i].mean_p > ps[best].mean_p) best = i;
  }
  return best;
}

}  // namespace

ScanResult scan_mean_p_serial(double alpha_min, double alpha_max, double step, double quad_tol) {
  const std::vector<double> alphas = grid(alpha_min, alpha_max, step);
  ScanResult r;
  r.profiles.reserve(alphas.size());
  for (double a : alphas) r.profiles.push_back(mean_p(a, quad_tol));
  r.argmax = argmax(r.profiles);
  return r;
}

ScanResult scan_mean_p(double alpha_min, double alpha_max, double step, double quad_tol) {
  const std::vector<double> alphas = grid(alpha_min, alpha_max, step);
  ScanResult r;
  r.profiles.resize(alphas.size());
  const auto n = static_cast<std::int64_t>(alphas.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      r.profiles[static_cast<std::size_t>(i)] = mean_p(alphas[static_cast<std::size_t>(i)], quad_tol);
    } catch (const Error&) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) throw Error(ErrorKind::QuadratureFailure, "quadrature failed during scan");
  r.argmax = argmax(r.profiles);
  return r;
}

}  // namespace rtb
