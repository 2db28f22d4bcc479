#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tailkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the documented domain of an operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A structural precondition (rank condition, root independence) fails.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// No object can satisfy the request, e.g. t*mu exceeds the maximum count.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Requested analysis is outside what the library models.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check between two computations disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A proposed certificate set does not host enough edges.
class CertificateError : public Error {
 public:
  CertificateError(std::uint64_t achieved, double required);

  std::uint64_t achieved() const noexcept { return achieved_; }
  double required() const noexcept { return required_; }

 private:
  std::uint64_t achieved_;
  double required_;
};

}  // namespace tailkit
