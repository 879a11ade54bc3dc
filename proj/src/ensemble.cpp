#include "rtb/ensemble.hpp"

#include <cmath>

#include "rtb/real.hpp"

namespace rtb {

std::uint64_t member_seed(std::uint64_t seed, std::uint64_t member) noexcept {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (member + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double sample_theta0(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.01, pi<double>() / 2.0 - 0.01);
  for (;;) {
    const double theta = dist(rng);
    if (std::abs(theta - pi<double>() / 4.0) > 1e-9) return theta;
  }
}

double sample_start_fraction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  return dist(rng);
}

EnsembleStart sample_member_start(std::uint64_t seed, std::uint64_t member, bool vary_start,
                                  double fixed_s) {
  std::mt19937_64 rng(member_seed(seed, member));
  const double theta0 = sample_theta0(rng);
  const double s = vary_start ? sample_start_fraction(rng) : fixed_s;
  return {theta0, Wall::Horizontal, s};
}

}  // namespace rtb
