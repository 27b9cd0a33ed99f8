#include "layerkey/keystream.hpp"

#include <sodium.h>

#include "layerkey/error.hpp"
#include "layerkey/hash.hpp"

namespace layerkey {

KeystreamReader::KeystreamReader(std::span<const std::uint8_t, 32> key) : key_(key) {
  hash::ensure_initialized();
}

KeystreamReader::~KeystreamReader() { secure_erase(buffer_.data(), buffer_.size()); }

void KeystreamReader::refill() {
  constexpr std::uint32_t kBlocks = kBufferBytes / 64;
  if (next_block_ > UINT32_MAX - kBlocks) throw Error(ErrorCode::kKeystreamExhausted, "ChaCha20 block counter exhausted");
  static constexpr std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> kZeroNonce{};
  buffer_.fill(0);
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), kZeroNonce.data(), next_block_,
                                     key_.bytes().data());
  next_block_ += kBlocks;
  offset_ = 0;
}

std::uint8_t KeystreamReader::next_byte() {
  if (offset_ == kBufferBytes) refill();
  ++position_;
  return buffer_[offset_++];
}

std::uint16_t KeystreamReader::next_u16() {
  const std::uint16_t lo = next_byte();
  const std::uint16_t hi = next_byte();
  return static_cast<std::uint16_t>(lo | (hi << 8));
}

}  // namespace layerkey
