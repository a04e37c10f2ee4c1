#pragma once

#include <stdexcept>
#include <string>

namespace meridian {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad dimensions, bad tags, bad flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point or parameter lies outside the admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// ODE integration hit a non-finite input.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A Gram-Schmidt step or induced metric became (near) null.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace meridian
