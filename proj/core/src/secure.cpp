#include "layerkey/secure.hpp"

#include <sodium.h>

#include "layerkey/error.hpp"

namespace layerkey {

void secure_erase(void* data, std::size_t size) noexcept {
  if (data != nullptr && size != 0) sodium_memzero(data, size);
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptyAfterNormalization: return "EmptyAfterNormalization";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kKdfFailure: return "KdfFailure";
    case ErrorCode::kIntegrityFailure: return "IntegrityFailure";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kDuplicateWord: return "DuplicateWord";
    case ErrorCode::kSpotCheckFailure: return "SpotCheckFailure";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kKeystreamExhausted: return "KeystreamExhausted";
    case ErrorCode::kUnknownSource: return "UnknownSource";
    case ErrorCode::kVectorMismatch: return "VectorMismatch";
    case ErrorCode::kNondeterminismDetected: return "NondeterminismDetected";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kOracleMismatch: return "OracleMismatch";
  }
  return "Unknown";
}

}  // namespace layerkey
