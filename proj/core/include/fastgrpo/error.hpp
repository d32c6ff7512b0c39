#pragma once

#include <stdexcept>
#include <string>

namespace fastgrpo {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on a function argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input record. The message names the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A GLCM could not be formed (no offset pair fits inside the patch).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A semantic-entropy provider returned something that is not a distribution.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient. The update that produced it is rejected.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Every question was filtered out by the curriculum.
class CurriculumExhaustedError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fastgrpo
