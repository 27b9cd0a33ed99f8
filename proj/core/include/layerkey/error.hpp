#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace layerkey {

enum class ErrorCode {
  kEmptyAfterNormalization,
  kInvalidUtf8,
  kKdfFailure,
  kIntegrityFailure,
  kCountMismatch,
  kDuplicateWord,
  kSpotCheckFailure,
  kIndexOutOfRange,
  kInvalidArgument,
  kKeystreamExhausted,
  kUnknownSource,
  kVectorMismatch,
  kNondeterminismDetected,
  kInsufficientSamples,
  kOracleMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. Messages never carry secret material.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace layerkey
