#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace layerkey::hash {

using Sha256Digest = std::array<std::uint8_t, 32>;

/// Unkeyed BLAKE2b over the concatenation of `parts`; out.size() in [16, 64].
void blake2b(std::span<std::uint8_t> out, std::initializer_list<std::span<const std::uint8_t>> parts);

Sha256Digest sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Initialises the backing crypto library once per process.
void ensure_initialized();

}  // namespace layerkey::hash
