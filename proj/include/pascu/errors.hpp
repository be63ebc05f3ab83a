#pragma once

#include <stdexcept>
#include <string>

namespace pascu {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated series could not reach the requested tail bound.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}
  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

/// Raised by the sharp-threshold solvers when no finite threshold exists.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pascu
