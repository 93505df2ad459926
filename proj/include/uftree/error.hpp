#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uftree {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input that parses but does not describe a valid ranked tree.
class InvalidTree : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its precondition (illegal push, merge order, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured size cap was exceeded (oracle node cap, solver weight cap, ...).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace uftree
