#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ibb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::uint64_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::uint64_t line() const noexcept { return line_; }

 private:
  std::uint64_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Internal state disagrees with itself (bucket sizes, stream lengths).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class InvalidBwtError : public Error {
 public:
  using Error::Error;
};

}  // namespace ibb
