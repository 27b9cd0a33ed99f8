#include "layerkey/wordlist.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>
#include <utility>

#include "layerkey/error.hpp"

namespace layerkey {
namespace detail {
// Generated at build time from assets/eff_large_wordlist.txt.
extern const unsigned char kEffLargeWordlist[];
extern const std::size_t kEffLargeWordlistSize;
}  // namespace detail

namespace {

constexpr std::array<std::pair<std::size_t, std::string_view>, 4> kKnownIndices{{
    {0, "abacus"},
    {469, "balance"},
    {3695, "life"},
    {7775, "zoom"},
}};

bool is_dice_index(std::string_view s) {
  return s.size() == 5 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '1' && c <= '6'; });
}

bool is_lowercase_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return (c >= 'a' && c <= 'z') || c == '-'; });
}

std::vector<std::string> parse(std::string_view asset) {
  std::vector<std::string> words;
  words.reserve(kWordlistSize);
  std::size_t line_no = 0;
  while (!asset.empty()) {
    ++line_no;
    const auto eol = asset.find('\n');
    if (eol == std::string_view::npos) {
      throw Error(ErrorCode::kIntegrityFailure, "wordlist integrity check failed: missing final newline");
    }
    const auto line = asset.substr(0, eol);
    asset.remove_prefix(eol + 1);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || !is_dice_index(line.substr(0, tab)) ||
        !is_lowercase_word(line.substr(tab + 1))) {
      throw Error(ErrorCode::kIntegrityFailure,
                  "wordlist integrity check failed: malformed line " + std::to_string(line_no));
    }
    words.emplace_back(line.substr(tab + 1));
  }
  return words;
}

}  // namespace

std::string_view embedded_wordlist_asset() noexcept {
  return {reinterpret_cast<const char*>(detail::kEffLargeWordlist), detail::kEffLargeWordlistSize};
}

Wordlist Wordlist::verify(std::string_view asset) {
  auto words = parse(asset);

  if (words.size() != kWordlistSize) {
    throw Error(ErrorCode::kCountMismatch, "wordlist count check failed: expected 7776 words, found " +
                                               std::to_string(words.size()));
  }

  std::unordered_set<std::string_view> seen;
  seen.reserve(words.size());
  for (const auto& w : words) {
    if (!seen.insert(w).second) throw Error(ErrorCode::kDuplicateWord, "wordlist uniqueness check failed: " + w);
  }

  for (const auto& [index, expected] : kKnownIndices) {
    if (words[index] != expected) {
      throw Error(ErrorCode::kSpotCheckFailure, "wordlist spot check failed at index " + std::to_string(index));
    }
  }

  const auto digest = hash::sha256({reinterpret_cast<const std::uint8_t*>(asset.data()), asset.size()});
  if (hash::to_hex(digest) != kWordlistSha256) {
    throw Error(ErrorCode::kIntegrityFailure, "wordlist integrity check failed: SHA-256 " + hash::to_hex(digest));
  }

  return Wordlist(std::move(words), digest);
}

const Wordlist& Wordlist::load_and_verify() {
  static const Wordlist list = verify(embedded_wordlist_asset());
  return list;
}

std::string_view Wordlist::word_at(std::size_t index) const {
  if (index >= words_.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "word index " + std::to_string(index) + " out of range");
  }
  return words_[index];
}

bool Wordlist::contains(std::string_view word) const noexcept {
  return std::find(words_.begin(), words_.end(), word) != words_.end();
}

}  // namespace layerkey
