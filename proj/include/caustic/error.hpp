#pragma once

#include <stdexcept>
#include <string>

namespace caustic {

/// Failure categories; the CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind {
  input,         // malformed document, invariant violation, refused hypothesis
  numeric,       // lift failure, refinement failure, I/O failure
  verification,  // a property that must hold did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ErrorKind::verification, what) {}
};

}  // namespace caustic
