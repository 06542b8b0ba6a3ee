#pragma once

#include <stdexcept>
#include <string>

namespace mplf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose shapes do not fit together (series orders, lengths).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of an L-function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Character whose values do not embed into the base p-adic field.
class UnsupportedCharacterError : public Error {
 public:
  using Error::Error;
};

/// Two computation routes that must agree did not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Character label that names no character.
class UnknownCharacterError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A prime was required.
class InvalidPrimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace mplf
