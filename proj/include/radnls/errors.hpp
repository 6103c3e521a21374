#pragma once

#include <stdexcept>
#include <string>

namespace radnls {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid or incomplete configuration (grid sizes, missing blocks, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. mass near a singular origin).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Discretization too coarse for the requested quantity.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// A requested bound cannot be met on the current grid.
class InfeasibleError : public Error {
public:
  InfeasibleError(const std::string& what, double floor)
      : Error(what), floor_(floor) {}
  double floor() const noexcept { return floor_; }

private:
  double floor_;
};

} // namespace radnls
