#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace deginv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A truncation bound could not be met within the summation cap.
class AccuracyError : public Error {
public:
  explicit AccuracyError(const std::string& what,
                         std::optional<int> needed_radius = std::nullopt)
      : Error(what), needed_radius_(needed_radius) {}

  /// Radius that would have satisfied the bound, when known.
  std::optional<int> needed_radius() const { return needed_radius_; }

private:
  std::optional<int> needed_radius_;
};

/// A modular form evaluated to zero within its error certificate.
class VanishingError : public Error {
public:
  using Error::Error;
};

/// The extrapolation fit of a sweep is underdetermined or singular.
class FitError : public Error {
public:
  using Error::Error;
};

/// An iteration hit its hard cap.
class NonTerminationError : public Error {
public:
  using Error::Error;
};

}  // namespace deginv
