#pragma once

// Ensemble dispatch. Members are independent; results land in a slot indexed
// by member id, so the output is identical for any thread count. The serial
// map is the reference the parallel one is tested against.

#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include <omp.h>

#include "rtb/error.hpp"
#include "rtb/geometry.hpp"

namespace rtb {

struct MemberError {
  ErrorKind kind;
  std::string message;
};

template <class T>
struct MemberResult {
  std::optional<T> value;
  std::optional<MemberError> error;

  bool ok() const { return value.has_value(); }
};

namespace detail {

template <class Fn>
using MemberValue = std::decay_t<std::invoke_result_t<Fn&, std::size_t>>;

template <class Fn>
void run_member(Fn& fn, std::size_t id, MemberResult<MemberValue<Fn>>& slot,
                std::exception_ptr& foreign) {
  try {
    slot.value.emplace(fn(id));
  } catch (const Error& e) {
    slot.error = MemberError{e.kind(), e.what()};
  } catch (...) {
    foreign = std::current_exception();
  }
}

}  // namespace detail

template <class Fn>
std::vector<MemberResult<detail::MemberValue<Fn>>> ensemble_map_serial(std::size_t count, Fn&& fn) {
  std::vector<MemberResult<detail::MemberValue<Fn>>> out(count);
  std::exception_ptr foreign;
  for (std::size_t i = 0; i < count; ++i) {
    detail::run_member(fn, i, out[i], foreign);
    if (foreign) std::rethrow_exception(foreign);
  }
  return out;
}

/// threads <= 0 uses the OpenMP default.
template <class Fn>
std::vector<MemberResult<detail::MemberValue<Fn>>> ensemble_map_parallel(std::size_t count, Fn&& fn,
                                                                         int threads = 0) {
  std::vector<MemberResult<detail::MemberValue<Fn>>> out(count);
  std::vector<std::exception_ptr> foreign(count);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto id = static_cast<std::size_t>(i);
    detail::run_member(fn, id, out[id], foreign[id]);
  }
  for (const auto& e : foreign) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Independent stream per (seed, member id).
std::uint64_t member_seed(std::uint64_t seed, std::uint64_t member) noexcept;

/// θ0 ~ U(0.01, π/2 − 0.01), resampled inside a 1e−9 neighborhood of π/4.
double sample_theta0(std::mt19937_64& rng);

/// Start fraction on the horizontal leg ~ U(0.05, 0.95).
double sample_start_fraction(std::mt19937_64& rng);

struct EnsembleStart {
  double theta0;
  Wall wall;
  double s;
};

/// Member initial condition. With vary_start false the start is (H, fixed_s).
EnsembleStart sample_member_start(std::uint64_t seed, std::uint64_t member, bool vary_start,
                                  double fixed_s = 0.37);

}  // namespace rtb
