#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cuspwave {

// Coarse failure taxonomy. Validation and Domain map to CLI exit code 2,
// Solver and Numerical to exit code 3.
enum class ErrorKind {
  Validation,  // malformed input data or configuration
  Domain,      // parameter outside the admissible range (r <= rC, lambda <= lambda0, ...)
  Solver,      // an iteration failed to converge within its budget
  Numerical,   // bracketing / quadrature / conditioning breakdown
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace cuspwave
