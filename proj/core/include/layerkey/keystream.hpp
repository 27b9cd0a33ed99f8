#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "layerkey/secure.hpp"

namespace layerkey {

/// Sequential reader over the RFC 8439 ChaCha20 keystream for a 32-byte key,
/// the all-zero 12-byte nonce and initial block counter 0. Single caller.
class KeystreamReader {
 public:
  explicit KeystreamReader(std::span<const std::uint8_t, 32> key);
  ~KeystreamReader();

  KeystreamReader(const KeystreamReader&) = delete;
  KeystreamReader& operator=(const KeystreamReader&) = delete;

  std::uint8_t next_byte();
  /// Two consecutive bytes, little-endian.
  std::uint16_t next_u16();

  /// Bytes consumed so far.
  [[nodiscard]] std::uint64_t position() const noexcept { return position_; }

 private:
  void refill();

  static constexpr std::size_t kBufferBytes = 512;  // 8 ChaCha20 blocks

  SecretArray<32> key_;
  std::array<std::uint8_t, kBufferBytes> buffer_{};
  std::size_t offset_ = kBufferBytes;
  std::uint32_t next_block_ = 0;
  std::uint64_t position_ = 0;
};

}  // namespace layerkey
