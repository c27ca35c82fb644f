#pragma once

#include <stdexcept>
#include <string>

namespace tavis {

/// Thrown when an iterative method fails to meet its accuracy contract
/// (Newton non-convergence, eigenvector residual out of bounds, ...).
/// Domain/precondition violations use std::domain_error instead.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tavis
