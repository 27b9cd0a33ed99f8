#include "layerkey/hash.hpp"

#include <sodium.h>

#include "layerkey/error.hpp"
#include "layerkey/secure.hpp"

namespace layerkey::hash {

void ensure_initialized() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error(ErrorCode::kKdfFailure, "libsodium initialisation failed");
}

void blake2b(std::span<std::uint8_t> out, std::initializer_list<std::span<const std::uint8_t>> parts) {
  ensure_initialized();
  if (out.size() < crypto_generichash_BYTES_MIN || out.size() > crypto_generichash_BYTES_MAX) {
    throw Error(ErrorCode::kInvalidArgument, "BLAKE2b output length must be in [16, 64]");
  }
  crypto_generichash_state state;
  crypto_generichash_init(&state, nullptr, 0, out.size());
  for (auto part : parts) crypto_generichash_update(&state, part.data(), part.size());
  crypto_generichash_final(&state, out.data(), out.size());
  secure_erase(&state, sizeof(state));
}

Sha256Digest sha256(std::span<const std::uint8_t> data) {
  ensure_initialized();
  Sha256Digest digest{};
  crypto_hash_sha256(digest.data(), data.data(), data.size());
  return digest;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

}  // namespace layerkey::hash
