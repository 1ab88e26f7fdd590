#pragma once

#include <stdexcept>
#include <string>

namespace provtrie {

enum class ErrorCode {
  InvalidArgument,
  RoleConflict,
  MissingNode,
  SelfLoopInDag,
  InvalidSize,
  CyclicInput,
  EmptySequence,
  ModeMismatch,
  FormatVersionMismatch,
  CorruptDocument,
  Overflow,
  TooLarge,
  EmptyDepth,
  SyntaxError,
  SchemaError,
  InsufficientData,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace provtrie
