#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewsim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the operation's domain (t <= 0, |beta| >= 1, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string& what, double partial_value, double error_estimate)
      : Error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double partial_value_;
  double error_estimate_;
};

/// A rejection sampler exhausted its attempt budget.
///
/// `index` identifies the failing item (skeleton point or batch sample);
/// npos when not applicable.
class RejectionBudgetError : public Error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit RejectionBudgetError(const std::string& what, std::size_t index = npos)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// A rejection envelope was found to be violated (acceptance ratio > 1).
class EnvelopeError : public Error {
public:
  using Error::Error;
};

}  // namespace skewsim
