#pragma once

#include <stdexcept>
#include <string>

namespace ssflab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its admissible range (p < 1, t <= 0, unknown kind, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A scalar function is not finite on part of a spectrum.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A resolvent was requested too close to the spectrum.
class SingularityError : public Error {
public:
  using Error::Error;
};

/// An input violates a documented contract (indefinite, non-Hermitian, non-invertible, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// An experiment configuration is inconsistent or incomplete.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// The dense eigensolver failed; carries the LAPACK info value.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, int info)
      : Error(what + " (lapack info=" + std::to_string(info) + ")"), info_(info) {}

  int info() const noexcept { return info_; }

private:
  int info_;
};

}  // namespace ssflab
