#include "layerkey/sampler.hpp"

#include <cmath>

namespace layerkey {

RejectionSpec RejectionSpec::make(unsigned bits, std::uint32_t range) {
  if (bits < 1 || bits > 31) throw Error(ErrorCode::kInvalidArgument, "sample width must be 1..31 bits");
  const std::uint64_t space = std::uint64_t{1} << bits;
  if (range < 1 || range > space) throw Error(ErrorCode::kInvalidArgument, "range must be in [1, 2^bits]");
  return {bits, range, static_cast<std::uint32_t>((space / range) * range)};
}

const Alphabet& Alphabet::standard() noexcept {
  static constexpr Alphabet kStandard(
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789!@#$%^&*()_+-=[]{}|;:,.<>?/~");
  return kStandard;
}

double entropy_bits(OutputMode mode, std::size_t count) {
  const double symbols = mode == OutputMode::kMnemonic ? static_cast<double>(kWordlistSize) : 90.0;
  return static_cast<double>(count) * std::log2(symbols);
}

double MnemonicPhrase::entropy_bits() const noexcept {
  return layerkey::entropy_bits(OutputMode::kMnemonic, word_count());
}

double PasswordString::entropy_bits() const noexcept {
  return layerkey::entropy_bits(OutputMode::kPassword, length());
}

MnemonicPhrase generate_mnemonic(const DerivedKey& key, std::size_t words, const Wordlist& list) {
  if (words == 0) throw Error(ErrorCode::kInvalidArgument, "word count must be at least 1");
  const auto spec = RejectionSpec::make(16, static_cast<std::uint32_t>(list.size()));
  KeystreamReader reader(key.bytes());
  MnemonicPhrase phrase;
  phrase.indices_.reserve(words);
  phrase.text_.reserve(words * 10);
  for (std::size_t i = 0; i < words; ++i) {
    const auto index = static_cast<std::uint16_t>(sample_uniform(reader, spec));
    phrase.indices_.push_back(index);
    if (i != 0) phrase.text_.push_back('-');
    phrase.text_.append(list[index]);
  }
  return phrase;
}

PasswordString generate_password(const DerivedKey& key, std::size_t length, const Alphabet& alphabet) {
  if (length == 0) throw Error(ErrorCode::kInvalidArgument, "password length must be at least 1");
  const auto spec = RejectionSpec::make(8, static_cast<std::uint32_t>(alphabet.size()));
  KeystreamReader reader(key.bytes());
  PasswordString password;
  password.text_.reserve(length);
  for (std::size_t i = 0; i < length; ++i) password.text_.push_back(alphabet[sample_uniform(reader, spec)]);
  return password;
}

}  // namespace layerkey
