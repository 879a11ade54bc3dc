#include "rtb/approximants.hpp"

#include <algorithm>
#include <cmath>

#include "rtb/alpha.hpp"
#include "rtb/error.hpp"

namespace rtb {

std::string to_string(BigInt v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t fib(int n) {
  if (n < 1 || n > kMaxFibIndex) {
    throw Error(ErrorKind::Range, "fib index " + std::to_string(n) + " outside 1..90");
  }
  std::int64_t prev = 0;
  std::int64_t cur = 1;
  for (int i = 1; i < n; ++i) {
    const std::int64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

double golden_phi() { return (std::sqrt(5.0) - 1.0) / 2.0; }

double binet(int n) {
  if (n < 1 || n > kMaxBinetIndex) {
    throw Error(ErrorKind::Range, "binet index " + std::to_string(n) + " outside 1..70");
  }
  const long double phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  return static_cast<double>((std::pow(phi, -n) - std::pow(-phi, n)) / (2.0L * phi + 1.0L));
}

Convergent golden_convergent(int n) {
  if (n < 2 || n + 1 > kMaxFibIndex) {
    throw Error(ErrorKind::Range, "golden convergent index " + std::to_string(n) + " outside 2..89");
  }
  return {n, fib(n), fib(n + 1)};
}

std::vector<Convergent> cf_convergents(double x, int depth) {
  if (!(x > 0.0) || !(x < 1.0)) throw Error(ErrorKind::Domain, "x must lie in (0, 1)");
  if (depth < 1) throw Error(ErrorKind::Domain, "depth must be at least 1");

  // x = mantissa / 2^shift exactly
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  auto mantissa = static_cast<BigInt>(std::ldexp(frac, 53));
  int shift = 53 - exponent;
  while (shift > 0 && (mantissa & 1) == 0) {
    mantissa >>= 1;
    --shift;
  }
  if (shift > 120) throw Error(ErrorKind::Range, "x too small for exact expansion");

  BigInt p = mantissa;
  BigInt q = BigInt{1} << shift;
  // a_0 = 0 for x in (0,1): convergent 0/1
  BigInt h_prev = 1, h = 0;
  BigInt k_prev = 0, k = 1;
  std::swap(p, q);  // consume a_0 = 0

  std::vector<Convergent> out;
  for (int n = 1; n <= depth && q != 0; ++n) {
    const BigInt a = p / q;
    const BigInt r = p - a * q;
    const BigInt h_next = a * h + h_prev;
    const BigInt k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    p = q;
    q = r;
    if (h > 0 && h < k) out.push_back({n, h, k});
  }
  return out;
}

RationalAlpha liouville_alpha(int k) {
  if (k < 1 || k > kMaxLiouvilleTerms) {
    throw Error(ErrorKind::Range, "Liouville terms " + std::to_string(k) + " outside 1..4");
  }
  auto factorial = [](int j) {
    int f = 1;
    for (int i = 2; i <= j; ++i) f *= i;
    return f;
  };
  auto pow10 = [](int e) {
    BigInt v = 1;
    for (int i = 0; i < e; ++i) v *= 10;
    return v;
  };
  const int top = factorial(k);
  BigInt numerator = 0;
  for (int j = 1; j <= k; ++j) numerator += pow10(top - factorial(j));
  BigInt denominator = pow10(top);
  const BigInt g = gcd(numerator, denominator);
  return {numerator / g, denominator / g};
}

}  // namespace rtb
