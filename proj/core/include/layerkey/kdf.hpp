#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "layerkey/normalize.hpp"
#include "layerkey/secure.hpp"

namespace layerkey {

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kMinSaltBytes = 16;
inline constexpr std::size_t kHashedSaltBytes = 64;

enum class Profile { kStandard, kParanoid };

/// Argon2id cost parameters. out_len is fixed at 32 bytes.
struct KdfParams {
  std::uint32_t memory_kib = 0;
  std::uint32_t iterations = 0;
  std::uint32_t lanes = 0;
  std::uint32_t out_len = kKeyBytes;

  /// 64 MiB, 16 passes, 6 lanes.
  static KdfParams standard() noexcept { return {65536, 16, 6, kKeyBytes}; }
  /// 128 MiB, 32 passes, 6 lanes.
  static KdfParams paranoid() noexcept { return {131072, 32, 6, kKeyBytes}; }
  static KdfParams of(Profile profile) noexcept { return profile == Profile::kParanoid ? paranoid() : standard(); }
  /// 8 MiB, 1 pass, 1 lane. Fast chaining checks in tests and the audit
  /// determinism run; not selectable from the command line.
  static KdfParams test_profile() noexcept { return {8192, 1, 1, kKeyBytes}; }
  /// Arbitrary costs, checked against the Argon2 structural minima.
  /// Throws Error(kInvalidArgument).
  static KdfParams custom(std::uint32_t memory_kib, std::uint32_t iterations, std::uint32_t lanes);

  void validate() const;

  friend bool operator==(const KdfParams&, const KdfParams&) = default;
};

class MasterSecret {
 public:
  explicit MasterSecret(NormalizedText text) noexcept : text_(std::move(text)) {}
  /// Normalizes `raw`; no length gate beyond non-emptiness.
  static MasterSecret from_raw(std::string_view raw) { return MasterSecret(normalize(raw)); }

  /// K0: the UTF-8 bytes of the normalized text.
  [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return text_.bytes(); }

 private:
  NormalizedText text_;
};

/// Ordered, non-empty list of context layers. Adjacent duplicates are allowed.
class LayerSequence {
 public:
  /// Throws Error(kInvalidArgument) when `layers` is empty.
  explicit LayerSequence(std::vector<NormalizedText> layers);
  /// Normalizes each entry; throws on any layer that normalizes to empty.
  static LayerSequence from_raw(std::initializer_list<std::string_view> raw);
  static LayerSequence from_raw(std::span<const std::string_view> raw);

  [[nodiscard]] std::size_t size() const noexcept { return layers_.size(); }
  [[nodiscard]] const NormalizedText& operator[](std::size_t i) const noexcept { return layers_[i]; }
  [[nodiscard]] auto begin() const noexcept { return layers_.begin(); }
  [[nodiscard]] auto end() const noexcept { return layers_.end(); }

 private:
  std::vector<NormalizedText> layers_;
};

/// Salt derived from one layer: the layer bytes when at least 16 long,
/// otherwise their 64-byte BLAKE2b-512 digest.
class SaltBytes {
 public:
  SaltBytes(SaltBytes&&) noexcept = default;
  SaltBytes& operator=(SaltBytes&&) noexcept = default;
  SaltBytes(const SaltBytes&) = delete;
  SaltBytes& operator=(const SaltBytes&) = delete;

  [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  [[nodiscard]] std::size_t size() const noexcept { return bytes_.size(); }
  [[nodiscard]] bool hashed() const noexcept { return hashed_; }

 private:
  friend SaltBytes make_salt(const NormalizedText& layer);
  SaltBytes(SecureBytes bytes, bool hashed) noexcept : bytes_(std::move(bytes)), hashed_(hashed) {}

  SecureBytes bytes_;
  bool hashed_ = false;
};

using DerivedKey = SecretArray<kKeyBytes>;

SaltBytes make_salt(const NormalizedText& layer);

/// One Argon2id invocation: K_i from K_{i-1}. `threads` changes scheduling only.
/// Throws Error(kInvalidArgument) on empty key material and Error(kKdfFailure)
/// when Argon2 rejects the parameters.
DerivedKey argon2id_step(std::span<const std::uint8_t> key_material, const SaltBytes& salt, const KdfParams& params,
                         unsigned threads = 0);

/// K_0 = master bytes, K_i = argon2id_step(K_{i-1}, make_salt(L_i)). Only the
/// predecessor key is alive at any point; it is wiped as soon as it is replaced.
DerivedKey derive_chain(const MasterSecret& master, const LayerSequence& layers, const KdfParams& params,
                        unsigned threads = 0);

}  // namespace layerkey
