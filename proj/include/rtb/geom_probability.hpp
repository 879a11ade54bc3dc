#pragma once

// Equidistribution estimate of the leg-to-leg bounce probability.
//
// From a point on one leg, the other leg subtends θ_x (seen from the
// horizontal leg) or θ_y (seen from the vertical leg). Averaging each over its
// leg and dividing by 2π gives ⟨p⟩.

#include <cstddef>
#include <vector>

#include "rtb/geometry.hpp"

namespace rtb {

/// θ_x(x) = atan(sin(α/2) / (cos(α/2) − x)) for Horizontal, with x measured from O;
/// θ_y(y) = atan(cos(α/2) / (sin(α/2) − y)) for Vertical, with y measured from Y.
/// DomainError unless 0 ≤ s < leg length.
double subtended_angle(Wall leg, double s, double alpha);

struct SubtendedProfile {
  double alpha = 0.0;
  double mean_theta_x = 0.0;
  double mean_theta_y = 0.0;
  double mean_p = 0.0;
  double inv_mean_p = 0.0;
};

struct QuadratureOptions {
  double tol = 1e-12;
  std::size_t max_evaluations = 2'000'000;
};

/// Adaptive Simpson on [a, b]; QuadratureFailure past the evaluation budget.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const QuadratureOptions& opt);

SubtendedProfile mean_p(double alpha, double quad_tol = 1e-12);

struct ScanResult {
  std::vector<SubtendedProfile> profiles;
  std::size_t argmax = 0;  // index of the largest mean_p
};

/// Profiles on alpha_min, alpha_min + step, ... ≤ alpha_max (inclusive within step/2).
ScanResult scan_mean_p(double alpha_min, double alpha_max, double step, double quad_tol = 1e-10);
ScanResult scan_mean_p_serial(double alpha_min, double alpha_max, double step, double quad_tol = 1e-10);

}  // namespace rtb

#include "rtb/geom_probability_impl.hpp"
