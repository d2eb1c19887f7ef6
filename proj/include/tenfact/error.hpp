#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tenfact {

enum class ErrorCode {
  kIndexOutOfRange,
  kDimensionMismatch,
  kMalformedInput,
  kInvalidData,
  kAmbiguous,
  kInconsistent,
  kNoConvergence,
  kNonpositive,
  kTargetMismatch,
  kInvalidEmbedding,
  kUnsupported,
  kAutoUnsupported,
  kOrderLimit,
  kSizeLimit,
  kResourceLimit,
  kNotCocycle,
  kNotSubgroup,
  kNotExactFactorization,
  kNotIntegral,
};

std::string_view error_code_name(ErrorCode code);

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

}  // namespace tenfact
