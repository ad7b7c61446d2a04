#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace batchbai {

// Base for every error raised by the library. Callers that only want to
// report a failure can catch this; the subclasses exist so tests and the
// experiment runner can tell the failure modes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidArm : public Error {
 public:
  using Error::Error;
};

class NonUniqueBest : public Error {
 public:
  using Error::Error;
};

class DegenerateSet : public Error {
 public:
  using Error::Error;
};

class UnreachableDirection : public Error {
 public:
  using Error::Error;
};

class InsufficientBudget : public Error {
 public:
  using Error::Error;
};

class RoundingFailure : public Error {
 public:
  using Error::Error;
};

class GeneratorParameter : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace batchbai
