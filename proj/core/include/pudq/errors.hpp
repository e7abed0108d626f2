#pragma once

#include <stdexcept>
#include <string>

namespace pudq {

// Base class for all engine errors. Subclasses identify the failure family so
// callers (and the CLI exit-code contract) can map them without string parsing.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A polynomial mentions a variable the pair signature does not know about.
class SignatureError : public Error {
 public:
  explicit SignatureError(const std::string& what) : Error(what) {}
};

// Parameter set makes a requested construction singular (e.g. equal
// frequencies where a 1/(omega1^2 - omega2^2) prefactor appears).
class SingularParamsError : public Error {
 public:
  explicit SingularParamsError(const std::string& what) : Error(what) {}
};

// A state is not normalizable for the requested parameters.
class NonNormalizableError : public Error {
 public:
  explicit NonNormalizableError(const std::string& what) : Error(what) {}
};

// Quadrature self-consistency gate failed: doubling the rule order moved the
// result by more than the declared tolerance.
class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& what) : Error(what) {}
};

// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Mixing scalars from incompatible quadratic extensions.
class FieldError : public Error {
 public:
  explicit FieldError(const std::string& what) : Error(what) {}
};

}  // namespace pudq
