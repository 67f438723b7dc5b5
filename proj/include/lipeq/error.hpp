#pragma once

#include <stdexcept>
#include <string>

namespace lipeq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands live in different rings") {}
  explicit RingMismatch(const std::string& what) : Error(what) {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

class ExponentOverflow : public Error {
 public:
  using Error::Error;
};

// Recoverable: the analyzer turns this into an Inconclusive outcome.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace lipeq
