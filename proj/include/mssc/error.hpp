#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mssc {

enum class ErrorCode {
  kEmptyRequest,
  kUnknownElement,
  kDuplicateElement,
  kDomainMismatch,
  kInvalidPosition,
  kInvalidInstance,
  kOracleTooLarge,
  kTraceMismatch,
  kIllegalChoice,
  kScheduleMismatch,
  kBadConfig,
  kRequiresRAtLeast2,
  kAuditRequiresBaseline,
  kIo,
};

std::string_view error_name(ErrorCode code);

// Every recoverable failure in the library is reported as an Error carrying a
// machine-readable code. what() is "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mssc
