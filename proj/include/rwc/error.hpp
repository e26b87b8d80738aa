#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data, files, parameters or configuration. The CLI maps these to
// exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A partition with one side empty.
class DegeneratePartitionError : public InputError {
 public:
  using InputError::InputError;
};

// Random-walk estimation could not produce a probability for one side
// (every walk from that side was discarded). Exit code 3.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rwc
