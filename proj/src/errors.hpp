#pragma once

#include <stdexcept>
#include <string>

namespace lfsr {

// Base of every error the library raises. The C API maps each subclass to
// one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index, shape or argument outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or invalid configuration (bad key, non-divisible size, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or breakdown inside an iterative solver.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfsr
