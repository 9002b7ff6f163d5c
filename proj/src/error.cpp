#include "mssc/error.hpp"

namespace mssc {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyRequest: return "EmptyRequest";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kDuplicateElement: return "DuplicateElement";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kInvalidPosition: return "InvalidPosition";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kOracleTooLarge: return "OracleTooLarge";
    case ErrorCode::kTraceMismatch: return "TraceMismatch";
    case ErrorCode::kIllegalChoice: return "IllegalChoice";
    case ErrorCode::kScheduleMismatch: return "ScheduleMismatch";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kRequiresRAtLeast2: return "RequiresRAtLeast2";
    case ErrorCode::kAuditRequiresBaseline: return "AuditRequiresBaseline";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace mssc
