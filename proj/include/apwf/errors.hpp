#ifndef APWF_ERRORS_HPP_
#define APWF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace apwf {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation point outside the valid chart region (e.g. r < r_floor).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad experiment configuration or unknown family/scenario name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Mismatched sizes or otherwise invalid call arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Induced metric numerically singular; surface too distorted.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Radial-graph representation lost star-shapedness during a flow.
class StarShapeError : public Error {
 public:
  using Error::Error;
};

// Area projection failed to converge.
class ProjectionError : public Error {
 public:
  using Error::Error;
};

// NaN/overflow during time stepping; dt likely too large.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

// Nonlinear least-squares sphere fit failed to converge.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace apwf

#endif  // APWF_ERRORS_HPP_
