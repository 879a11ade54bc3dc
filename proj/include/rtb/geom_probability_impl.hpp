#pragma once

#include <cmath>

#include "rtb/error.hpp"

namespace rtb {

namespace detail {

struct SimpsonState {
  const QuadratureOptions* opt;
  std::size_t evaluations = 0;
};

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  st.evaluations += 2;
  if (st.evaluations > st.opt->max_evaluations) {
    throw Error(ErrorKind::QuadratureFailure, "quadrature evaluation budget exhausted");
  }
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (!(a < lm && rm < b)) {
    throw Error(ErrorKind::QuadratureFailure, "quadrature interval no longer divisible");
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, st) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, st);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, const QuadratureOptions& opt) {
  detail::SimpsonState st{&opt};
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  st.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, opt.tol, st);
}

}  // namespace rtb
