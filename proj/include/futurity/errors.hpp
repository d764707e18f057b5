#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace futurity {

/// Bad user input: malformed strategies, out-of-range probabilities,
/// malformed distributions. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyPattern : public ValidationError {
 public:
  EmptyPattern() : ValidationError("EmptyPattern: strategy text is empty") {}
};

class IllegalCharacter : public ValidationError {
 public:
  IllegalCharacter(std::size_t position, char c)
      : ValidationError("IllegalCharacter: '" + std::string(1, c) + "' at position " +
                        std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class MissingArm : public ValidationError {
 public:
  MissingArm() : ValidationError("MissingArm: strategy must contain at least one A and one B") {}
};

class PatternTooLong : public ValidationError {
 public:
  explicit PatternTooLong(std::size_t length)
      : ValidationError("PatternTooLong: " + std::to_string(length) + " symbols exceeds the cap") {}
};

class NotCanonical : public ValidationError {
 public:
  NotCanonical() : ValidationError("NotCanonical: strategy must start with A and end with B") {}
};

class BlockCountTooSmall : public ValidationError {
 public:
  explicit BlockCountTooSmall(std::size_t h)
      : ValidationError("BlockCountTooSmall: need h >= 2, got h = " + std::to_string(h)) {}
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidDistribution : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateMode : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure inside the library (solver residual too large, two
/// independent routes disagreeing). The CLI maps these to exit code 3.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public NumericFailure {
 public:
  SolverFailure(const std::string& what, double residual)
      : NumericFailure("SolverFailure: " + what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace futurity
