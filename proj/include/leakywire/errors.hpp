#pragma once

#include <stdexcept>
#include <string>

namespace leakywire {

// Base for everything the library throws on a violated precondition or a
// failed numerical procedure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain where a quantity is defined (branch cut
// contact, Re w <= 0 for K0, energy on the essential spectrum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A real-axis energy was requested where the continuum starts and a
// multiplier or amplitude degenerates.
class ThresholdError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The Fourier-space integrand has a pole on the real integration path; the
// caller must use the sheet-aware continuation instead.
class PoleOnPathError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A second-sheet point lies outside the implemented continuation region.
class RegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative procedure (quadrature, root search, extrapolation) did not reach
// its tolerance within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Invalid model or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace leakywire
