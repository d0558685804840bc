#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace camo {

enum class ErrorKind {
  kInvalidInput,
  kParse,
  kConfig,
  kDuplicate,
  kDegenerateVector,
  kDegenerateMean,
  kDegenerateDirectory,
  kDegenerateDistribution,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind lets
/// callers (the CLI in particular) map failures onto exit codes without
/// string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by pathological data rather than bad input.
  bool is_degenerate() const noexcept {
    return kind_ == ErrorKind::kDegenerateVector ||
           kind_ == ErrorKind::kDegenerateMean ||
           kind_ == ErrorKind::kDegenerateDirectory ||
           kind_ == ErrorKind::kDegenerateDistribution;
  }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::kInvalidInput, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorKind::kParse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class DuplicateError : public Error {
 public:
  explicit DuplicateError(const std::string& what)
      : Error(ErrorKind::kDuplicate, what) {}
};

class DegenerateVector : public Error {
 public:
  explicit DegenerateVector(const std::string& what)
      : Error(ErrorKind::kDegenerateVector, what) {}
};

class DegenerateMean : public Error {
 public:
  explicit DegenerateMean(const std::string& what)
      : Error(ErrorKind::kDegenerateMean, what) {}
};

class DegenerateDirectory : public Error {
 public:
  explicit DegenerateDirectory(const std::string& what)
      : Error(ErrorKind::kDegenerateDirectory, what) {}
};

class DegenerateDistribution : public Error {
 public:
  explicit DegenerateDistribution(const std::string& what)
      : Error(ErrorKind::kDegenerateDistribution, what) {}
};

}  // namespace camo
