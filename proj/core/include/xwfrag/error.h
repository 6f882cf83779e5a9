#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xwfrag {

enum class ErrorCode {
  kMissingDocument,
  kMalformedXml,
  kIntegrityViolation,
  kIoError,
  kInvalidSpec,
  kSyntaxError,
  kUnknownDimension,
  kUnknownAttribute,
  kTooManyPredicates,
  kResultMismatch,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library. Parsers attach a 1-based source
// position when they have one; line() == 0 means "no position".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorCode code_;
  int line_;
  int column_;
};

}  // namespace xwfrag
