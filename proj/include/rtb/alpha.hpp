#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "rtb/approximants.hpp"
#include "rtb/real.hpp"

namespace rtb {

/// α = π·M/N.
struct RationalAlpha {
  BigInt M = 1;
  BigInt N = 2;
  friend bool operator==(const RationalAlpha&, const RationalAlpha&) = default;
};

/// α = π·F_n/F_{n+1}.
struct GoldenConvergentAlpha {
  int n = 2;
  friend bool operator==(const GoldenConvergentAlpha&, const GoldenConvergentAlpha&) = default;
};

/// α = π(√5 − 1)/2 at working precision.
struct GoldenExactAlpha {
  friend bool operator==(const GoldenExactAlpha&, const GoldenExactAlpha&) = default;
};

/// α = π·Σ_{j≤k} 10^{−j!}.
struct LiouvilleAlpha {
  int k = 1;
  friend bool operator==(const LiouvilleAlpha&, const LiouvilleAlpha&) = default;
};

/// α given directly in radians.
struct LiteralAlpha {
  double value = 1.0;
  friend bool operator==(const LiteralAlpha&, const LiteralAlpha&) = default;
};

using AlphaSpec =
    std::variant<RationalAlpha, GoldenConvergentAlpha, GoldenExactAlpha, LiouvilleAlpha, LiteralAlpha>;

/// Accepts golden, rational:M/N, golden-convergent:n, liouville:k, rad:<value>.
AlphaSpec parse_alpha(std::string_view text);
std::string format_alpha(const AlphaSpec& spec);

/// Throws ConfigError when the spec violates its invariants.
void validate_alpha(const AlphaSpec& spec);

/// Exact M/N for the variants that have one.
std::optional<RationalAlpha> rational_form(const AlphaSpec& spec);

Quad golden_phi_quad();

template <class Real>
Real evaluate_alpha(const AlphaSpec& spec);

template <>
double evaluate_alpha<double>(const AlphaSpec& spec);
template <>
Quad evaluate_alpha<Quad>(const AlphaSpec& spec);

}  // namespace rtb
