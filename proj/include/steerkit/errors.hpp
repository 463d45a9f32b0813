#pragma once

#include <stdexcept>
#include <string>

namespace steerkit {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rates that are negative, non-finite, or otherwise violate SystemParams.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside the regime where it is defined
/// (unequal losses for an equal-loss formula, g1 >= g2 for the squeezed frame, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: singular conditioning, residual too large, non-convergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerkit
