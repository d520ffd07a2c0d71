#pragma once

#include <stdexcept>
#include <string>

namespace partialk {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments, malformed input files, or an inconsistent configuration.
class config_error : public error {
 public:
  explicit config_error(const std::string& what) : error(what) {}
};

/// Request is well formed but outside the supported feature set
/// (e.g. resampling envelopes for partial statistics, dimension > 3).
class unsupported_error : public error {
 public:
  explicit unsupported_error(const std::string& what) : error(what) {}
};

/// Numerical failure: singular covariate spectra, symmetry residuals,
/// quadrature that does not converge, rejection bounds exceeded.
class numeric_error : public error {
 public:
  explicit numeric_error(const std::string& what) : error(what) {}
};

}  // namespace partialk
