#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace roycrit {

// Root finding on a truncated expansion failed (Newton diverged and the
// bisection fallback found no bracketed root).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations, double residual,
              std::vector<double> trajectory)
      : std::runtime_error(what),
        iterations_(iterations),
        residual_(residual),
        trajectory_(std::move(trajectory)) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }
  const std::vector<double>& trajectory() const { return trajectory_; }

 private:
  int iterations_;
  double residual_;
  std::vector<double> trajectory_;
};

// A truncated series produced a probability outside (0,1); the offending
// value is carried along for diagnostics.
class ApproximationError : public std::runtime_error {
 public:
  ApproximationError(const std::string& what, double value)
      : std::runtime_error(what), value_(value) {}

  double value() const { return value_; }

 private:
  double value_;
};

// The quadratic truncation has no real root for these inputs.
class NoRealRootError : public std::runtime_error {
 public:
  NoRealRootError(const std::string& what, double discriminant)
      : std::runtime_error(what), discriminant_(discriminant) {}

  double discriminant() const { return discriminant_; }

 private:
  double discriminant_;
};

}  // namespace roycrit
