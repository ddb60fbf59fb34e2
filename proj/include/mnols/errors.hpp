#pragma once

#include <stdexcept>
#include <string>

namespace mnols {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OddOrder : public Error {
 public:
  using Error::Error;
};

class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class SymbolOutOfRange : public Error {
 public:
  using Error::Error;
};

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class NotAPermutation : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

// Thrown when a constructed column fails its own re-validation. Seeing this
// means one of the affine formula tables is wrong.
class ConstructionInvariantViolation : public Error {
 public:
  using Error::Error;
};

class FullCheckTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidBase : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mnols
