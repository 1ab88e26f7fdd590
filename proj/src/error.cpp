#include "provtrie/error.hpp"

namespace provtrie {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RoleConflict: return "RoleConflict";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::SelfLoopInDag: return "SelfLoopInDag";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::CyclicInput: return "CyclicInput";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptDocument: return "CorruptDocument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyDepth: return "EmptyDepth";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace provtrie
