#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "layerkey/secure.hpp"

namespace layerkey {

/// UTF-8 text that is whitespace-trimmed, NFC-normalized and non-empty.
/// Only normalize() constructs one. Storage is wiped on release.
class NormalizedText {
 public:
  NormalizedText(NormalizedText&&) noexcept = default;
  NormalizedText& operator=(NormalizedText&&) noexcept = default;

  [[nodiscard]] std::string_view view() const noexcept { return text_.view(); }
  [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return text_.bytes(); }
  [[nodiscard]] std::size_t size() const noexcept { return text_.size(); }

  friend bool operator==(const NormalizedText& a, const NormalizedText& b) noexcept { return a.text_ == b.text_; }

 private:
  friend NormalizedText normalize(std::string_view raw);
  explicit NormalizedText(SecureString text) noexcept : text_(std::move(text)) {}

  SecureString text_;
};

/// NFC(trim(raw)). Trimming strips Unicode White_Space code points.
/// Throws Error(kInvalidUtf8) or Error(kEmptyAfterNormalization).
NormalizedText normalize(std::string_view raw);

}  // namespace layerkey
