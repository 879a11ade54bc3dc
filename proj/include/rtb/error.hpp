#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtb {

enum class ErrorKind {
  Domain,
  Range,
  Config,
  CornerHit,
  NumericalDegeneracy,
  IntegerOverflow,
  Drift,
  NotFound,
  Ambiguous,
  DegenerateFit,
  QuadratureFailure,
  SimultaneousEvent,
  DegenerateStart,
  Schema,
  IO,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Numerical aborts (corner hits, drift, degenerate events) as opposed to bad input.
bool is_numerical_abort(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rtb
