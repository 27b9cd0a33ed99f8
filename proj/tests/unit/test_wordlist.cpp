#include <doctest.h>

#include <random>
#include <string>

#include "layerkey/error.hpp"
#include "layerkey/wordlist.hpp"

using layerkey::Error;
using layerkey::ErrorCode;
using layerkey::Wordlist;

namespace {

std::string genuine() { return std::string(layerkey::embedded_wordlist_asset()); }

ErrorCode failure_of(const std::string& asset) {
  try {
    (void)Wordlist::verify(asset);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;  // accepted
}

std::size_t line_start(const std::string& asset, std::size_t index) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < index; ++i) pos = asset.find('\n', pos) + 1;
  return pos;
}

}  // namespace

TEST_CASE("embedded list passes every check") {
  const auto& list = Wordlist::load_and_verify();
  CHECK(list.size() == 7776);
  CHECK(list.word_at(0) == "abacus");
  CHECK(list.word_at(469) == "balance");
  CHECK(list.word_at(3695) == "life");
  CHECK(list.word_at(7775) == "zoom");
  CHECK(layerkey::hash::to_hex(list.digest()) == layerkey::kWordlistSha256);
  CHECK(layerkey::hash::to_hex(list.digest()).substr(0, 8) == "addd3553");
  CHECK(list.contains("eagle"));
  CHECK_FALSE(list.contains("Eagle"));
  CHECK(&Wordlist::load_and_verify() == &list);
}

TEST_CASE("word_at bounds") {
  const auto& list = Wordlist::load_and_verify();
  try {
    (void)list.word_at(7776);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndexOutOfRange);
  }
}

TEST_CASE("asset is the published file layout") {
  const auto asset = layerkey::embedded_wordlist_asset();
  CHECK(asset.substr(0, 12) == "11111\tabacus");
  CHECK(asset.back() == '\n');
}

TEST_CASE("malformed content is an integrity failure") {
  auto a = genuine();
  a.pop_back();
  CHECK(failure_of(a) == ErrorCode::kIntegrityFailure);

  a = genuine();
  a[0] = '7';  // not a die face
  CHECK(failure_of(a) == ErrorCode::kIntegrityFailure);

  a = genuine();
  a[5] = ' ';  // tab replaced
  CHECK(failure_of(a) == ErrorCode::kIntegrityFailure);
}

TEST_CASE("missing word is a count mismatch") {
  auto a = genuine();
  const auto start = line_start(a, 100);
  a.erase(start, a.find('\n', start) - start + 1);
  CHECK(failure_of(a) == ErrorCode::kCountMismatch);
}

TEST_CASE("repeated word is a duplicate") {
  auto a = genuine();
  // Line 2 ("11112\tabandon") becomes a second "abacus".
  const auto start = line_start(a, 1);
  const auto end = a.find('\n', start);
  a.replace(start + 6, end - start - 6, "abacus");
  CHECK(failure_of(a) == ErrorCode::kDuplicateWord);
}

TEST_CASE("changed anchor word is a spot-check failure") {
  auto a = genuine();
  const auto start = line_start(a, 7775);
  REQUIRE(a.substr(start + 6, 4) == "zoom");
  a.replace(start + 6, 4, "zoon");
  CHECK(failure_of(a) == ErrorCode::kSpotCheckFailure);
}

TEST_CASE("well-formed edit elsewhere is caught by the digest") {
  auto a = genuine();
  const auto start = line_start(a, 1000);
  const auto end = a.find('\n', start);
  a.replace(start + 6, end - start - 6, "qqqqqq");
  CHECK(failure_of(a) == ErrorCode::kIntegrityFailure);
}

TEST_CASE("property: random single-byte flips are all rejected") {
  const auto base = genuine();
  std::mt19937_64 rng(7776);
  std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
  std::uniform_int_distribution<int> mask(1, 255);
  for (int i = 0; i < 300; ++i) {
    auto a = base;
    const auto p = pos(rng);
    a[p] = static_cast<char>(a[p] ^ mask(rng));
    CHECK_THROWS_AS((void)Wordlist::verify(a), Error);
  }
}
