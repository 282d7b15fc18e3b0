#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gyration {

enum class ErrorKind {
  structural,   // malformed graph or index out of range
  domain,       // argument outside the mathematical domain (n < 2, isolated vertex, ...)
  consistency,  // displacement groups do not close up on the structure embedding
  resource,     // enumeration would exceed the configured cap
  numeric,      // solver failure
  parse,        // scene file grammar
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct StructuralError : Error {
  explicit StructuralError(const std::string& what) : Error(ErrorKind::structural, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

struct ConsistencyError : Error {
  ConsistencyError(const std::string& what, double worst_residual, int worst_group)
      : Error(ErrorKind::consistency, what), worst_residual(worst_residual), worst_group(worst_group) {}
  double worst_residual;
  int worst_group;  // 1-based edge of G'
};

struct ResourceError : Error {
  ResourceError(const std::string& what, double cardinality)
      : Error(ErrorKind::resource, what), cardinality(cardinality) {}
  /// (n!)^e'. Stored as double since it routinely overflows 64 bits.
  double cardinality;
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, int line) : Error(ErrorKind::parse, what), line(line) {}
  int line;  // 0 when the problem is not tied to a single line
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace gyration
