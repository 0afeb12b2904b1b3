#pragma once

#include <stdexcept>
#include <string>

namespace asns {

/// Machine-readable error category. The names are written verbatim into
/// run summaries and CLI diagnostics.
enum class ErrorKind {
  Precondition,
  Capacity,
  Identifier,
  Convergence,
  Structure,
  Protocol,
  Configuration,
  Parse,
  Validation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::Precondition, what) {}
};

class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, int limit)
      : Error(ErrorKind::Capacity, what), limit_(limit) {}
  int limit() const noexcept { return limit_; }

 private:
  int limit_;
};

class IdentifierError : public Error {
 public:
  explicit IdentifierError(const std::string& what)
      : Error(ErrorKind::Identifier, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorKind::Convergence, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised when a structural guarantee of the defense does not hold on the
/// given input (disconnected candidate graph, empty selection set, ...).
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what)
      : Error(ErrorKind::Structure, what) {}
};

class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what)
      : Error(ErrorKind::Protocol, what) {}
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& what)
      : Error(ErrorKind::Configuration, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::Validation, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace asns
