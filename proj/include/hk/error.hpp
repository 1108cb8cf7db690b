#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hk {

// Broad failure classes; each maps to a CLI exit code.
enum class ErrorKind {
  parse,         // malformed input text (exit 2)
  precondition,  // mathematical precondition violated (exit 3)
  resource,      // overflow, size limits, retry exhaustion (exit 4)
  internal,      // broken invariant (exit 5)
};

int exit_code(ErrorKind kind) noexcept;

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
  ParseError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::parse,
              what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

// Operands come from different fields or rings.
class SpecMismatch : public PreconditionError {
 public:
  explicit SpecMismatch(const std::string& what) : PreconditionError(what) {}
};

class DivisionByZero : public PreconditionError {
 public:
  DivisionByZero() : PreconditionError("division by zero") {}
};

class UnsupportedCharacteristic : public PreconditionError {
 public:
  explicit UnsupportedCharacteristic(const std::string& what)
      : PreconditionError(what) {}
};

class InvalidQ : public PreconditionError {
 public:
  explicit InvalidQ(const std::string& what) : PreconditionError(what) {}
};

class NotMPrimary : public PreconditionError {
 public:
  explicit NotMPrimary(const std::string& what) : PreconditionError(what) {}
};

class SingularMatrix : public PreconditionError {
 public:
  SingularMatrix() : PreconditionError("matrix is singular") {}
};

class NotAUnit : public PreconditionError {
 public:
  explicit NotAUnit(const std::string& what) : PreconditionError(what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorKind::resource, what) {}
};

class OverflowError : public ResourceError {
 public:
  explicit OverflowError(const std::string& what) : ResourceError(what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::internal, what) {}
};

}  // namespace hk
