#pragma once

#include <stdexcept>
#include <string>

namespace hrck {

enum class ErrorKind {
  Parse,
  Io,
  Domain,
  Unsupported,
  ValidationRequired,
  Refused,
  Consistency,
};

// Every failure raised by the core carries a kind so the C layer can map it
// onto a status code without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorKind::Consistency, what) {}
};

}  // namespace hrck
