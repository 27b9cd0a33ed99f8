#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "layerkey/hash.hpp"

namespace layerkey {

inline constexpr std::size_t kWordlistSize = 7776;  // 6^5

/// SHA-256 of the published EFF Large Wordlist file, byte for byte
/// ("NNNNN\tword\n" lines).
inline constexpr std::string_view kWordlistSha256 =
    "addd35536511597a02fa0a9ff1e5284677b8883b83e986e43f15a3db996b903e";

/// The EFF Large Wordlist. Instances only exist after passing every check:
/// line format, count, uniqueness, known indices and the pinned digest.
class Wordlist {
 public:
  /// The list compiled into the library, verified on first use.
  static const Wordlist& load_and_verify();

  /// Parses and verifies a wordlist file image. Throws Error with
  /// kIntegrityFailure, kCountMismatch, kDuplicateWord or kSpotCheckFailure.
  static Wordlist verify(std::string_view asset);

  /// Throws Error(kIndexOutOfRange) for index >= 7776.
  [[nodiscard]] std::string_view word_at(std::size_t index) const;
  [[nodiscard]] std::string_view operator[](std::size_t index) const noexcept { return words_[index]; }
  [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
  [[nodiscard]] const hash::Sha256Digest& digest() const noexcept { return digest_; }
  [[nodiscard]] bool contains(std::string_view word) const noexcept;

 private:
  Wordlist(std::vector<std::string> words, hash::Sha256Digest digest) noexcept
      : words_(std::move(words)), digest_(digest) {}

  std::vector<std::string> words_;
  hash::Sha256Digest digest_{};
};

/// Raw bytes of the embedded asset, exactly as shipped.
std::string_view embedded_wordlist_asset() noexcept;

}  // namespace layerkey
