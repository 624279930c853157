#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strahler {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tree text or observable expression. `offset` is the byte offset
// of the first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A configured ceiling (enumeration, exact arithmetic) would be exceeded.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Pointwise evaluation of x/0 with x != 0.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// A bifurcation ratio whose denominator expectation is zero.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

}  // namespace strahler
