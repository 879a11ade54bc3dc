#pragma once

// Scalar backends. Standard is hardware double; Extended is IEEE binary128
// (113-bit significand, ~34 significant decimal digits) via boost's wrapper
// around __float128.

#include <cmath>
#include <cstdint>
#include <string_view>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace rtb {

using Quad = boost::multiprecision::float128;

enum class Precision { Standard, Extended };

std::string_view to_string(Precision p) noexcept;
Precision parse_precision(std::string_view text);

template <class Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
inline Real two_pi() {
  return boost::math::constants::two_pi<Real>();
}

inline double to_double(double x) { return x; }
inline double to_double(const Quad& x) { return x.convert_to<double>(); }

/// Reduces into [0, 2π).
template <class Real>
Real wrap_two_pi(Real x) {
  using std::fmod;
  const Real period = two_pi<Real>();
  Real r = fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

/// Shortest distance between two angles on the circle, in [0, π].
template <class Real>
Real angular_distance(Real a, Real b) {
  const Real d = wrap_two_pi<Real>(a - b);
  return d > pi<Real>() ? two_pi<Real>() - d : d;
}

/// k·alpha mod 2π in [0, 2π).
///
/// For doubles the product is formed exactly as an unevaluated sum hi + lo
/// (fma error-free transform) and reduced against a two-term 2π, so the
/// result stays accurate to a few ulps of 2π even for |k| in the 10^12 range.
inline double multiple_mod_two_pi(std::int64_t k, double alpha) {
  constexpr double kTwoPiHi = 6.283185307179586232;
  constexpr double kTwoPiLo = 2.449293598294706e-16;
  const double kd = static_cast<double>(k);
  const double p_hi = kd * alpha;
  const double p_lo = std::fma(kd, alpha, -p_hi);
  const double n = std::nearbyint(p_hi / kTwoPiHi);
  double r = std::fma(-n, kTwoPiHi, p_hi);
  r += p_lo - n * kTwoPiLo;
  return wrap_two_pi(r);
}

inline Quad multiple_mod_two_pi(std::int64_t k, const Quad& alpha) {
  using boost::multiprecision::floor;
  const Quad period = two_pi<Quad>();
  const Quad p = Quad(k) * alpha;
  Quad r = p - floor(p / period) * period;
  return wrap_two_pi(r);
}

}  // namespace rtb
