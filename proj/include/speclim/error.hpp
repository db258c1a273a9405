#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speclim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (dimension, direction set, tuple length).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The QL iteration did not converge; carries the index of the block that stalled.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t block)
      : Error(what), block_(block) {}

  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

/// A family declared commuting is not, within its tolerance.
class CommutationError : public Error {
 public:
  CommutationError(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace speclim
