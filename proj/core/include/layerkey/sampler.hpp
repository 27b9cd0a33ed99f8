#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "layerkey/error.hpp"
#include "layerkey/kdf.hpp"
#include "layerkey/keystream.hpp"
#include "layerkey/secure.hpp"
#include "layerkey/wordlist.hpp"

namespace layerkey {

/// Rejection rule for mapping uniform `bits`-bit draws onto [0, range):
/// accept r < threshold = floor(2^bits / range) * range, output r mod range.
struct RejectionSpec {
  unsigned bits = 0;
  std::uint32_t range = 0;
  std::uint32_t threshold = 0;

  /// Throws Error(kInvalidArgument) unless 1 <= bits <= 31 and 1 <= range <= 2^bits.
  static RejectionSpec make(unsigned bits, std::uint32_t range);
  /// (16, 7776, 62208)
  static RejectionSpec mnemonic() { return make(16, static_cast<std::uint32_t>(kWordlistSize)); }
  /// (8, 90, 180)
  static RejectionSpec password() { return make(8, 90); }

  [[nodiscard]] std::optional<std::uint32_t> accept(std::uint32_t draw) const noexcept {
    if (draw < threshold) return draw % range;
    return std::nullopt;
  }

  friend bool operator==(const RejectionSpec&, const RejectionSpec&) = default;
};

/// Keystream bytes one sample_uniform call may consume before giving up.
inline constexpr std::uint64_t kMaxBytesPerSample = std::uint64_t{1} << 20;

template <class Source>
concept ByteSource = requires(Source& s) {
  { s.next_byte() } -> std::convertible_to<std::uint8_t>;
};

/// Draws 8- or 16-bit little-endian values from `source` until one is
/// accepted by `spec`. Throws Error(kKeystreamExhausted) past the byte cap.
template <ByteSource Source>
std::uint32_t sample_uniform(Source& source, const RejectionSpec& spec) {
  if (spec.bits != 8 && spec.bits != 16) {
    throw Error(ErrorCode::kInvalidArgument, "sampling supports 8- and 16-bit draws only");
  }
  const std::uint64_t bytes_per_draw = spec.bits / 8;
  for (std::uint64_t used = 0; used < kMaxBytesPerSample; used += bytes_per_draw) {
    std::uint32_t draw = static_cast<std::uint8_t>(source.next_byte());
    if (bytes_per_draw == 2) draw |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(source.next_byte())) << 8;
    if (auto value = spec.accept(draw)) return *value;
  }
  throw Error(ErrorCode::kKeystreamExhausted, "rejection sampling exceeded the keystream cap");
}

/// The 90 password characters: A-Z, a-z, 0-9, then 28 specials.
class Alphabet {
 public:
  static const Alphabet& standard() noexcept;

  [[nodiscard]] char operator[](std::size_t i) const noexcept { return chars_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return chars_.size(); }
  [[nodiscard]] std::string_view chars() const noexcept { return {chars_.data(), chars_.size()}; }
  [[nodiscard]] bool contains(char c) const noexcept { return chars().find(c) != std::string_view::npos; }

 private:
  constexpr explicit Alphabet(std::string_view chars) noexcept {
    for (std::size_t i = 0; i < chars_.size(); ++i) chars_[i] = chars[i];
  }

  std::array<char, 90> chars_{};
};

/// `count` words joined by "-". Text and word indices are wiped on release.
class MnemonicPhrase {
 public:
  [[nodiscard]] std::string_view text() const noexcept { return text_.view(); }
  [[nodiscard]] std::span<const std::uint16_t> indices() const noexcept { return indices_; }
  [[nodiscard]] std::size_t word_count() const noexcept { return indices_.size(); }
  [[nodiscard]] double entropy_bits() const noexcept;

 private:
  friend MnemonicPhrase generate_mnemonic(const DerivedKey&, std::size_t, const Wordlist&);
  MnemonicPhrase() = default;

  SecureString text_;
  SecureVector<std::uint16_t> indices_;
};

class PasswordString {
 public:
  [[nodiscard]] std::string_view text() const noexcept { return text_.view(); }
  [[nodiscard]] std::size_t length() const noexcept { return text_.size(); }
  [[nodiscard]] double entropy_bits() const noexcept;

 private:
  friend PasswordString generate_password(const DerivedKey&, std::size_t, const Alphabet&);
  PasswordString() = default;

  SecureString text_;
};

/// Throws Error(kInvalidArgument) when words == 0.
MnemonicPhrase generate_mnemonic(const DerivedKey& key, std::size_t words,
                                 const Wordlist& list = Wordlist::load_and_verify());

/// Throws Error(kInvalidArgument) when length == 0.
PasswordString generate_password(const DerivedKey& key, std::size_t length,
                                 const Alphabet& alphabet = Alphabet::standard());

enum class OutputMode { kMnemonic, kPassword };

/// count * log2(7776) for mnemonics, count * log2(90) for passwords.
double entropy_bits(OutputMode mode, std::size_t count);

}  // namespace layerkey
