#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gframe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not conform. Carries the offending member/block index when known.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg, std::optional<std::size_t> block = std::nullopt)
      : Error(block ? msg + " (block " + std::to_string(*block) + ")" : msg), block_(block) {}

  std::optional<std::size_t> block_index() const noexcept { return block_; }

 private:
  std::optional<std::size_t> block_;
};

/// An operation's precondition failed; `value` is the computed quantity that failed it.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& msg, double value)
      : Error(msg + " (value " + std::to_string(value) + ")"), value_(value) {}

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// A scalar parameter lies outside its admissible range (e.g. |alpha| >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A least-squares solve left a residual above tolerance where an exact solution was required.
class NoExactSolutionError : public Error {
 public:
  NoExactSolutionError(const std::string& msg, double residual)
      : Error(msg + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Eigen/SVD failure or a randomized construction that exhausted its retry budget.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gframe
