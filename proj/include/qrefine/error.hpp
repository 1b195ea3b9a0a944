#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrefine {

enum class ErrorCode {
  kSingularMatrix,
  kDimensionMismatch,
  kNotSymmetric,
  kIndexOutOfRange,
  kLengthMismatch,
  kTooLarge,
  kTooManyQubits,
  kInvalidArgument,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

/// Library-wide exception; `code()` identifies the failed contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qrefine
