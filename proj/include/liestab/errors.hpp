#pragma once

#include <stdexcept>
#include <string>

namespace liestab {

/// Malformed or inconsistent user input (dimensions, files, arguments).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear map does not leave the requested subspace invariant.
class InvarianceViolation : public std::runtime_error {
 public:
  InvarianceViolation(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The matrix has an eigenvalue on the closed negative real axis.
class PrincipalLogUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certificate hypothesis does not hold for the given system.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liestab
