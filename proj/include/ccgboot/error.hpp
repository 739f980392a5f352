#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccgboot {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (logical forms, categories, types, lexicon lines).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a data contract (unknown tag, bad corpus line, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccgboot
