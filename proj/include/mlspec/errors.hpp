#pragma once

#include <stdexcept>
#include <string>

namespace mlspec {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse"; }
};

/// A configured resource cap (k, series order, word length) was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource_limit"; }
};

/// The working precision or window was insufficient; retry with more digits.
class PrecisionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precision"; }
};

/// A mathematical hypothesis of the requested operation does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "hypothesis"; }
};

/// A certified decision could not be reached either way.
class UndecidedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "undecided"; }
};

}  // namespace mlspec
