#include <doctest.h>

#include <random>
#include <string>

#include "layerkey/error.hpp"
#include "layerkey/normalize.hpp"
#include "test_util.hpp"

using layerkey::Error;
using layerkey::ErrorCode;
using layerkey::normalize;

namespace {

ErrorCode failure_of(std::string_view raw) {
  try {
    normalize(raw);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("normalize accepted input it should reject");
  return ErrorCode::kInvalidArgument;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

TEST_CASE("trim only") { CHECK(normalize("  balance  ").view() == "balance"); }

TEST_CASE("decomposed accent composes") {
  // Expected bytes from Python's unicodedata.normalize("NFC", ...).
  const auto text = normalize("cafe\xcc\x81");
  CHECK(layerkey::test::hex(text.bytes()) == "636166c3a9");
  CHECK(text.view() == "caf\xc3\xa9");
}

TEST_CASE("already composed text is unchanged") { CHECK(normalize("caf\xc3\xa9").view() == "caf\xc3\xa9"); }

TEST_CASE("unicode whitespace is trimmed, interior whitespace kept") {
  // U+3000 IDEOGRAPHIC SPACE, U+00A0 NO-BREAK SPACE, tab, newline
  CHECK(normalize("\xe3\x80\x80\tout of\xc2\xa0\n").view() == "out of");
}

TEST_CASE("empty results are rejected") {
  CHECK(failure_of("") == ErrorCode::kEmptyAfterNormalization);
  CHECK(failure_of(" \t\r\n ") == ErrorCode::kEmptyAfterNormalization);
  CHECK(failure_of("\xe3\x80\x80") == ErrorCode::kEmptyAfterNormalization);
}

TEST_CASE("invalid UTF-8 is rejected") {
  CHECK(failure_of("ab\xff") == ErrorCode::kInvalidUtf8);
  CHECK(failure_of("\xc3") == ErrorCode::kInvalidUtf8);
}

TEST_CASE("property: normalization is idempotent and trims") {
  // Pool mixes ASCII, precomposed letters, combining marks, Hangul jamo and spaces.
  const char32_t pool[] = {U'a', U'e', U'z',   U' ',   U'\t',  0x00E9, 0x0301, 0x0308, 0x0327,
                           0x1100, 0x1161, 0x11A8, 0xAC00, 0x3000, 0x00A0, 0x212B, 0x0041, 0x030A};
  std::mt19937 rng(20251017);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  std::uniform_int_distribution<int> length(1, 12);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw;
    const int n = length(rng);
    for (int i = 0; i < n; ++i) append_utf8(raw, pool[pick(rng)]);
    try {
      const auto once = normalize(raw);
      const auto twice = normalize(once.view());
      CHECK(once == twice);
      CHECK(once.view().front() != ' ');
      CHECK(once.view().back() != ' ');
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyAfterNormalization);
    }
  }
  CHECK(checked > 1000);
}
