#pragma once

#include <cstdint>
#include <span>

namespace layerkey::argon2 {

inline constexpr std::uint32_t kVersion = 0x13;
inline constexpr std::uint32_t kSyncPoints = 4;
inline constexpr std::uint32_t kMinSaltBytes = 8;

struct Params {
  std::uint32_t memory_kib = 0;
  std::uint32_t iterations = 0;
  std::uint32_t lanes = 0;
};

/// Argon2id (RFC 9106, version 0x13) without secret key or associated data.
///
/// `out.size()` is the tag length. `threads` bounds how many lanes are filled
/// concurrently within a slice (0 picks the hardware concurrency); it has no
/// effect on the output bytes. Rejected parameters raise Error(kKdfFailure):
/// memory below 8 KiB per lane, zero iterations or lanes, salt shorter than
/// 8 bytes, tag shorter than 16 bytes. (The RFC allows 4..15 byte tags, but
/// libsodium's BLAKE2b stops at 16-byte digests.)
void hash_id(std::span<std::uint8_t> out, std::span<const std::uint8_t> password,
             std::span<const std::uint8_t> salt, const Params& params, unsigned threads = 0);

}  // namespace layerkey::argon2
