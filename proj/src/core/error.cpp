#include "maxtail/error.hpp"

namespace maxtail {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigParse: return "config_parse";
    case ErrorCode::InvalidParameter: return "invalid_parameter";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::BracketFailure: return "bracket_failure";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::NoAdmissiblePath: return "no_admissible_path";
    case ErrorCode::NonStrictGenerator: return "non_strict_generator";
    case ErrorCode::InsufficientTail: return "insufficient_tail";
  }
  return "unknown";
}

}  // namespace maxtail
