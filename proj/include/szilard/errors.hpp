#pragma once

#include <stdexcept>
#include <string>

namespace szilard {

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative solver or basis escalation did not reach its tolerance.
/// `residual` is the best achieved value of the controlled quantity
/// (eigen-residual for the eigensolver, |delta ln Z| for basis growth).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The retained spectrum does not reach far enough up in energy for the
/// requested temperature.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double required_window)
      : std::runtime_error(what), required_window_(required_window) {}
  /// Energy window above the ground state that would be needed.
  double required_window() const noexcept { return required_window_; }

 private:
  double required_window_;
};

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace szilard
