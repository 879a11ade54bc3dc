#pragma once

// Rational approximants of irrational multiples of π.
//
// φ here is (√5 − 1)/2 ≈ 0.618, so the golden convergents are F_n / F_{n+1}.

#include <cstdint>
#include <string>
#include <vector>

namespace rtb {

using BigInt = __int128;

std::string to_string(BigInt v);
BigInt gcd(BigInt a, BigInt b);

inline constexpr int kMaxFibIndex = 90;
inline constexpr int kMaxBinetIndex = 70;
inline constexpr int kMaxLiouvilleTerms = 4;

/// F_1 = F_2 = 1. RangeError outside 1..90.
std::int64_t fib(int n);

/// F_n = (φ^{−n} − (−φ)^n) / (2φ + 1). RangeError outside 1..70.
double binet(int n);

/// The golden-ratio constant (√5 − 1)/2.
double golden_phi();

struct Convergent {
  int n = 0;
  BigInt M = 0;
  BigInt N = 1;

  double value() const { return static_cast<double>(M) / static_cast<double>(N); }
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// (F_n, F_{n+1}); requires 2 ≤ n < 90.
Convergent golden_convergent(int n);

/// Continued-fraction convergents of the exact binary value of x ∈ (0, 1).
///
/// Entries are numbered by truncation depth (n = 1 is 1/a_1) and only those
/// strictly inside (0, 1) are returned, so golden entries line up with
/// golden_convergent(n). A rational input with a shorter expansion yields the
/// shorter list.
std::vector<Convergent> cf_convergents(double x, int depth);

struct RationalAlpha;

/// Σ_{j=1..k} 10^{−j!} in lowest terms, k in 1..4.
RationalAlpha liouville_alpha(int k);

}  // namespace rtb
