#include "xwfrag/error.h"

namespace xwfrag {
namespace {

std::string Decorate(ErrorCode code, const std::string& message, int line, int column) {
  std::string out(ErrorCodeName(code));
  out += ": ";
  out += message;
  if (line > 0) {
    out += " (line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
  }
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingDocument: return "MissingDocument";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kIntegrityViolation: return "IntegrityViolation";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownDimension: return "UnknownDimension";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kTooManyPredicates: return "TooManyPredicates";
    case ErrorCode::kResultMismatch: return "ResultMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(Decorate(code, message, line, column)),
      code_(code),
      line_(line),
      column_(column) {}

}  // namespace xwfrag
