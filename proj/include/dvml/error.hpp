#pragma once

#include <stdexcept>
#include <string>

namespace dvml {

/// Root of all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Errors detectable before any data pass: bad schemas, bad arguments,
/// malformed configs and graphs. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Errors raised while data is flowing. The CLI maps these to exit code 3.
class ExecutionError : public Error {
 public:
  using Error::Error;
};

// -- validation family --------------------------------------------------

class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TypeMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InactiveColumnError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidColumnError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownOperatorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Graph structure problems: cycles, unbound or doubly-written variables.
class GraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Bad user-supplied example handed to a prediction engine.
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Wrong magic/version in a persisted file.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

// -- execution family ---------------------------------------------------

/// Cursor/getter misuse: advancing past Done, reading before the first
/// advance. Reported, never undefined behavior.
class ContractError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

class IoError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

/// A persisted file is structurally damaged (truncated chunk, missing
/// archive entry).
class CorruptionError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

class ResourceLimitError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

class TrainingError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

class ParseError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

}  // namespace dvml
