#pragma once

// Velocity angle carried exactly as θ = φ + Kα, with φ drawn from
// {θ0, −θ0, π−θ0, π+θ0} and K an integer.

#include <cstdint>
#include <string_view>
#include <vector>

#include "rtb/error.hpp"
#include "rtb/geometry.hpp"
#include "rtb/real.hpp"

namespace rtb {

enum class PhiIndex : std::uint8_t {
  P0,  // θ0
  P1,  // −θ0
  P2,  // π − θ0
  P3,  // π + θ0
};

inline constexpr std::array<PhiIndex, 4> kAllPhi = {PhiIndex::P0, PhiIndex::P1, PhiIndex::P2,
                                                    PhiIndex::P3};

constexpr std::string_view phi_code(PhiIndex p) noexcept {
  switch (p) {
    case PhiIndex::P0: return "P0";
    case PhiIndex::P1: return "P1";
    case PhiIndex::P2: return "P2";
    case PhiIndex::P3: return "P3";
  }
  return "?";
}

PhiIndex parse_phi(std::string_view code);

struct SymbolicDirection {
  PhiIndex phi = PhiIndex::P0;
  std::int64_t k = 0;

  friend bool operator==(const SymbolicDirection&, const SymbolicDirection&) = default;
};

/// Both K bookkeeping conventions for one trajectory.
struct KCounters {
  std::int64_t k_exact = 0;  // specular-law convention (hyp: K → 1 − K)
  std::int64_t k_paper = 0;  // hyp: K → K + 1, leg: K → −K

  friend bool operator==(const KCounters&, const KCounters&) = default;
};

/// φ-index map under reflection off each wall.
constexpr PhiIndex reflect_phi(PhiIndex p, Wall w) noexcept {
  const auto i = static_cast<std::uint8_t>(p);
  if (w == Wall::Vertical) return static_cast<PhiIndex>(i ^ 2u);  // P0↔P2, P1↔P3
  // H and HYP: φ → −φ, i.e. P0↔P1, P2↔P3
  return static_cast<PhiIndex>(i ^ 1u);
}

/// Specular-law update: H (φ→−φ, K→−K), V (φ→π−φ, K→−K), HYP (φ→−φ, K→1−K).
SymbolicDirection update_exact(SymbolicDirection s, Wall w);

/// Hypotenuse K → K + 1, either leg K → −K.
std::int64_t update_paper(std::int64_t k, Wall w);

KCounters update_counters(KCounters c, Wall w);

template <class Real>
Real phi_value(PhiIndex p, Real theta0) {
  switch (p) {
    case PhiIndex::P0: return theta0;
    case PhiIndex::P1: return -theta0;
    case PhiIndex::P2: return pi<Real>() - theta0;
    case PhiIndex::P3: return pi<Real>() + theta0;
  }
  return theta0;
}

/// (φ(θ0) + K·α) mod 2π with K·α reduced before the addition.
template <class Real>
Real realize(SymbolicDirection s, Real theta0, Real alpha) {
  return wrap_two_pi<Real>(phi_value(s.phi, theta0) + multiple_mod_two_pi(s.k, alpha));
}

/// Inverse of realize: the unique (φ, K) with |K| ≤ k_max within tol of theta.
/// Throws NotFound when nothing matches and Ambiguous when several do.
template <class Real>
SymbolicDirection decompose(Real theta, Real theta0, Real alpha, std::int64_t k_max, Real tol) {
  if (k_max < 0) throw Error(ErrorKind::Domain, "k_max must be non-negative");
  if (!(tol > 0)) throw Error(ErrorKind::Domain, "tol must be positive");
  std::vector<SymbolicDirection> matches;
  for (std::int64_t k = -k_max; k <= k_max; ++k) {
    const Real rot = multiple_mod_two_pi(k, alpha);
    for (PhiIndex p : kAllPhi) {
      const Real candidate = wrap_two_pi<Real>(phi_value(p, theta0) + rot);
      if (angular_distance(candidate, theta) < tol) matches.push_back({p, k});
    }
  }
  if (matches.empty()) throw Error(ErrorKind::NotFound, "no (phi, K) reproduces theta");
  if (matches.size() > 1) {
    throw Error(ErrorKind::Ambiguous, "theta matches " + std::to_string(matches.size()) +
                                          " symbolic directions");
  }
  return matches.front();
}

/// θ0 from a realized angle and its decomposition: subtract K·α, invert φ.
template <class Real>
Real recover_theta0(Real theta, std::int64_t k, PhiIndex p, Real alpha) {
  const Real psi = wrap_two_pi<Real>(theta - multiple_mod_two_pi(k, alpha));
  switch (p) {
    case PhiIndex::P0: return psi;
    case PhiIndex::P1: return wrap_two_pi<Real>(-psi);
    case PhiIndex::P2: return wrap_two_pi<Real>(pi<Real>() - psi);
    case PhiIndex::P3: return wrap_two_pi<Real>(psi - pi<Real>());
  }
  return psi;
}

}  // namespace rtb
