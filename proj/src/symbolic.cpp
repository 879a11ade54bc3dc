#include "rtb/symbolic.hpp"

#include <string>

namespace rtb {

namespace {

std::int64_t checked_negate(std::int64_t k) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(std::int64_t{0}, k, &out)) {
    throw Error(ErrorKind::IntegerOverflow, "K negation overflows");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::IntegerOverflow, "K increment overflows");
  }
  return out;
}

}  // namespace

PhiIndex parse_phi(std::string_view code) {
  for (PhiIndex p : kAllPhi) {
    if (phi_code(p) == code) return p;
  }
  throw Error(ErrorKind::Schema, "unknown phi index '" + std::string(code) + "'");
}

SymbolicDirection update_exact(SymbolicDirection s, Wall w) {
  const std::int64_t negated = checked_negate(s.k);
  const std::int64_t k = w == Wall::Hypotenuse ? checked_add(negated, 1) : negated;
  return {reflect_phi(s.phi, w), k};
}

std::int64_t update_paper(std::int64_t k, Wall w) {
  return w == Wall::Hypotenuse ? checked_add(k, 1) : checked_negate(k);
}

KCounters update_counters(KCounters c, Wall w) {
  const std::int64_t negated = checked_negate(c.k_exact);
  return {w == Wall::Hypotenuse ? checked_add(negated, 1) : negated, update_paper(c.k_paper, w)};
}

}  // namespace rtb
