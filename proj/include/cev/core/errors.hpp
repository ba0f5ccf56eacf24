#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input from the caller. The CLI maps these to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class ShapeError : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateSampleError : public InputError {
 public:
  using InputError::InputError;
};

class IngestionError : public InputError {
 public:
  IngestionError(const std::string& what, std::size_t line)
      : InputError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A solver failed on valid input. The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double gap)
      : NumericalError(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class InfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cev
