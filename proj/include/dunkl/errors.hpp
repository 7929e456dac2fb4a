#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

// Every failure raised by the library derives from Error so callers can catch
// the whole family at once; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Result would not be representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Phase time hit (or left) the first caustic cell S in (0, pi).
class CausticError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the oscillatory regime a closed form assumes.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The requested operation has no implementation for this scenario kind.
class UnsupportedScenarioError : public Error {
 public:
  using Error::Error;
};

// m(t) vanishes (pulsating node) on the queried interval.
class MassNodeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Auxiliary solution rho(t) collapsed towards zero during integration.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Adaptive integrator could not meet its tolerance.
class StepFailureError : public Error {
 public:
  using Error::Error;
};

// A quadrature rule cannot resolve the oscillation of its integrand.
class QuadratureResolutionError : public Error {
 public:
  using Error::Error;
};

// Grid shape does not match what an operation needs (asymmetry, mismatch).
class GridError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration (bad flag, malformed file, inconsistent values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dunkl
