#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biorth {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Iteration caps, overflow and other floating-point breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidPointError : public Error {
 public:
  using Error::Error;
};

class InvalidTangentError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class LineSearchError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when no line applies.
class FormatError : public Error {
 public:
  FormatError(const std::string& detail, std::size_t line)
      : FormatError(std::string(), detail, line) {}
  FormatError(const std::string& source, const std::string& detail, std::size_t line)
      : Error(compose(source, detail, line)), detail_(detail), line_(line) {}

  const std::string& detail() const { return detail_; }
  std::size_t line() const { return line_; }

 private:
  static std::string compose(const std::string& source, const std::string& detail,
                             std::size_t line) {
    std::string where = source;
    if (line) where += (where.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? detail : where + ": " + detail;
  }

  std::string detail_;
  std::size_t line_;
};

}  // namespace biorth
