#pragma once

#include <stdexcept>
#include <string>

namespace torusbound {

/// A computation produced a value it cannot vouch for: a non-finite
/// quadrature node, an indefinite Galerkin matrix, or two independent
/// routes that disagree beyond their stated tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative scheme ran out of iterations or resolutions.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace torusbound
