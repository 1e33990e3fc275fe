#ifndef MAXTAIL_ERROR_HPP
#define MAXTAIL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace maxtail {

enum class ErrorCode {
  ConfigParse,
  InvalidParameter,
  InvalidArgument,
  Unsupported,
  Domain,
  Overflow,
  BracketFailure,
  Degenerate,
  NoAdmissiblePath,
  NonStrictGenerator,
  InsufficientTail,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code carries the category so
// the C boundary can map it onto a status value without RTTI games.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace maxtail

#endif
