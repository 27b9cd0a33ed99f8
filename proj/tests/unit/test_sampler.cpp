#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "layerkey/error.hpp"
#include "layerkey/keystream.hpp"
#include "layerkey/sampler.hpp"
#include "test_util.hpp"

using namespace layerkey;
using layerkey::test::from_hex;
using layerkey::test::hex;

namespace {

DerivedKey key_from_hex(std::string_view h) {
  const auto raw = from_hex(h);
  REQUIRE(raw.size() == 32);
  return DerivedKey(std::span<const std::uint8_t, 32>(raw.data(), 32));
}

struct ScriptedSource {
  std::vector<std::uint8_t> bytes;
  std::size_t pos = 0;
  std::uint8_t next_byte() { return bytes.at(pos++); }
};

struct ConstantSource {
  std::uint8_t value = 0xFF;
  std::uint64_t used = 0;
  std::uint8_t next_byte() {
    ++used;
    return value;
  }
};

// Keys and expected outputs below come from a Python model built on the
// `cryptography` package (Argon2id + ChaCha20) and the published EFF file.
constexpr std::string_view kStandardKey = "6a0e41d4f5b72c7f7ef6ecdc293420bb030e28d88e69b5693a6c27c5262d4010";
constexpr std::string_view kParanoidKey = "0652f540fd78ee3a6c0c528f982fa03850687c01ab047e626be6eee245775ba4";
constexpr std::string_view kReducedKey = "bd0296ed546af62b94a04292ccb5ce3ff38c40111646ea45802c1e18b6710a0f";
constexpr std::string_view kZeroKey = "0000000000000000000000000000000000000000000000000000000000000000";

}  // namespace

TEST_CASE("thresholds") {
  CHECK(RejectionSpec::mnemonic().threshold == 62208);
  CHECK(RejectionSpec::password().threshold == 180);
  CHECK(RejectionSpec::make(8, 256).threshold == 256);
  CHECK(RejectionSpec::make(4, 6).threshold == 12);
  CHECK_THROWS_AS(RejectionSpec::make(8, 257), Error);
  CHECK_THROWS_AS(RejectionSpec::make(0, 1), Error);
  CHECK_THROWS_AS(RejectionSpec::make(8, 0), Error);
}

TEST_CASE("accept rule at the boundary") {
  const auto spec = RejectionSpec::password();
  CHECK(spec.accept(179) == 89u);
  CHECK_FALSE(spec.accept(180).has_value());
  CHECK(spec.accept(0) == 0u);
  CHECK(spec.accept(90) == 0u);
  const auto words = RejectionSpec::mnemonic();
  CHECK(words.accept(62207) == 7775u);
  CHECK_FALSE(words.accept(62208).has_value());
}

TEST_CASE("rejected draws are skipped") {
  ScriptedSource s{{200, 13}};
  CHECK(sample_uniform(s, RejectionSpec::password()) == 13);
  CHECK(s.pos == 2);
}

TEST_CASE("16-bit draws are little-endian") {
  // 0x0001 little-endian is bytes {01, 00}; big-endian would read 256.
  ScriptedSource s{{0x01, 0x00}};
  CHECK(sample_uniform(s, RejectionSpec::mnemonic()) == 1);
  ScriptedSource reject_then_take{{0x00, 0xF3, 0x10, 0x00}};  // 0xF300 = 62208 rejected
  CHECK(sample_uniform(reject_then_take, RejectionSpec::mnemonic()) == 16);
}

TEST_CASE("a source that never yields an acceptable draw is cut off") {
  ConstantSource s;
  try {
    (void)sample_uniform(s, RejectionSpec::password());
    FAIL("expected KeystreamExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kKeystreamExhausted);
  }
  CHECK(s.used == kMaxBytesPerSample);
}

TEST_CASE("exhaustive 8-bit enumeration over 90 symbols") {
  const auto spec = RejectionSpec::password();
  std::map<std::uint32_t, int> preimages;
  int accepted = 0;
  for (std::uint32_t r = 0; r < 256; ++r) {
    if (auto v = spec.accept(r)) {
      ++accepted;
      ++preimages[*v];
    }
  }
  CHECK(accepted == 180);
  CHECK(preimages.size() == 90);
  for (const auto& [value, n] : preimages) CHECK(n == 2);
}

TEST_CASE("keystream matches RFC 8439 ChaCha20 with zero key and nonce") {
  const auto key = key_from_hex(kZeroKey);
  KeystreamReader reader(key.bytes());
  std::vector<std::uint8_t> first;
  for (int i = 0; i < 64; ++i) first.push_back(reader.next_byte());
  CHECK(hex(first) ==
        "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7da41597c5157488d7724e03fb8d84a376a43b8f41518a11"
        "cc387b669b2ee6586");
  CHECK(reader.position() == 64);
}

TEST_CASE("keystream is continuous across buffer refills") {
  const auto key = key_from_hex(kReducedKey);
  KeystreamReader bytewise(key.bytes());
  KeystreamReader pairwise(key.bytes());
  for (int i = 0; i < 2048; ++i) {
    const std::uint16_t lo = bytewise.next_byte();
    const std::uint16_t hi = bytewise.next_byte();
    REQUIRE(pairwise.next_u16() == static_cast<std::uint16_t>(lo | (hi << 8)));
  }
  CHECK(pairwise.position() == 4096);
}

TEST_CASE("mnemonic vectors") {
  CHECK(generate_mnemonic(key_from_hex(kZeroKey), 4).text() == "bloated-saturday-usable-shank");
  CHECK(generate_mnemonic(key_from_hex(kStandardKey), 8).text() ==
        "eagle-huskiness-septum-defection-splatter-version-important-stumble");
  CHECK(generate_mnemonic(key_from_hex(kReducedKey), 8).text() ==
        "upstream-skid-cough-subsiding-revival-tribesman-stinging-kissing");
  CHECK(generate_mnemonic(key_from_hex(kParanoidKey), 24).text() ==
        "vigorous-purebred-exclusion-deface-champion-anatomist-jubilance-snowcap-palace-bankbook-basis-overcast-"
        "stunner-augmented-viability-ascension-polygon-spinning-trolling-arson-sagging-line-fraction-rely");
}

TEST_CASE("password vectors") {
  CHECK(generate_password(key_from_hex(kZeroKey), 8).text() == "c,(92#DQ");
  CHECK(generate_password(key_from_hex(kStandardKey), 20).text() == "6n=rX.k:Qs+)6e5oa-Z:");
  CHECK(generate_password(key_from_hex(kReducedKey), 20).text() == "U8iY/G3wV+6>==!#-8fD");
  CHECK(generate_password(key_from_hex(kParanoidKey), 48).text() ==
        "kex9)5&&$>,N<4}@mDawmgyn<hY_5e@WsvKQsUD*ut9EN^&D");
}

TEST_CASE("shorter outputs are prefixes of longer ones") {
  const auto key = key_from_hex(kStandardKey);
  const auto eight = generate_mnemonic(key, 8);
  const auto three = generate_mnemonic(key, 3);
  CHECK(eight.text().substr(0, three.text().size()) == three.text());
  const auto pw = generate_password(key, 64);
  CHECK(pw.text().substr(0, 20) == "6n=rX.k:Qs+)6e5oa-Z:");
}

TEST_CASE("phrase structure") {
  const auto phrase = generate_mnemonic(key_from_hex(kStandardKey), 8);
  CHECK(phrase.word_count() == 8);
  const auto& list = Wordlist::load_and_verify();
  std::string rebuilt;
  for (auto i : phrase.indices()) {
    if (!rebuilt.empty()) rebuilt += '-';
    rebuilt += list[i];
  }
  CHECK(rebuilt == phrase.text());
  CHECK_THROWS_AS(generate_mnemonic(key_from_hex(kStandardKey), 0), Error);
  CHECK_THROWS_AS(generate_password(key_from_hex(kStandardKey), 0), Error);
}

TEST_CASE("alphabet") {
  const auto& a = Alphabet::standard();
  CHECK(a.size() == 90);
  CHECK(a.chars() == "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789!@#$%^&*()_+-=[]{}|;:,.<>?/~");
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.chars().find(a[i]) == i);  // no repeats
}

TEST_CASE("entropy") {
  CHECK(std::abs(entropy_bits(OutputMode::kMnemonic, 8) - 103.4) <= 0.05);
  CHECK(std::abs(entropy_bits(OutputMode::kMnemonic, 24) - 310.2) <= 0.05);
  CHECK(std::abs(entropy_bits(OutputMode::kPassword, 20) - 129.8) <= 0.05);
  CHECK(std::abs(entropy_bits(OutputMode::kPassword, 48) - 311.6) <= 0.05);
  CHECK(entropy_bits(OutputMode::kMnemonic, 1) == doctest::Approx(std::log2(7776.0)));
}
