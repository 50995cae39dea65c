#pragma once

#include <stdexcept>
#include <string>

namespace ips {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Out-of-range parameters or unphysical matrices.
struct ValidationError : Error {
  using Error::Error;
};

/// Degenerate IPS parameters for which the detector can never click
/// (r = 0, tau = 1 or eta = 0): the conditional state is undefined.
struct NoClickError : Error {
  using Error::Error;
};

/// The requested ordering parameter s makes W_s non-normalizable.
/// `component` is the index of the violating Gaussian component.
struct NormalizabilityError : Error {
  NormalizabilityError(const std::string& msg, int component_index)
      : Error(msg), component(component_index) {}
  int component;
};

/// A truncated Fock-space computation did not converge within the
/// configured cutoff budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// File could not be opened or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace ips
