#include <doctest.h>

#include <array>
#include <vector>

#include "layerkey/argon2.hpp"
#include "layerkey/error.hpp"
#include "test_util.hpp"

using layerkey::Error;
using layerkey::ErrorCode;
using layerkey::argon2::hash_id;
using layerkey::argon2::Params;
using layerkey::test::bytes_of;
using layerkey::test::hex;

namespace {

// Expected tags computed with the `cryptography` package's Argon2id (OpenSSL
// backend), an implementation independent of this one.
std::string tag(std::string_view password, std::string_view salt, Params p, std::size_t len = 32,
                unsigned threads = 0) {
  std::vector<std::uint8_t> out(len);
  hash_id(out, bytes_of(password), bytes_of(salt), p, threads);
  return hex(out);
}

}  // namespace

TEST_CASE("argon2id matches independent reference tags") {
  CHECK(tag("password", "somesaltsomesalt", {64, 3, 1}) ==
        "6164c739a04e17de34a80bee65c6a58f4b8a240cbf5652f4a79e35ae02b7c616");
  CHECK(tag("password", "somesaltsomesalt", {64, 3, 4}) ==
        "9cb56f6cad0c84f51536569e63acbc47d2fdefaeea4b4f711efb5409e37f34ca");
  CHECK(tag("life", "exactly-16-bytes", {256, 2, 2}) ==
        "bfdccbdebf8fd78129563d615405a914ec1e2a21f7ae8453883286e664ffe764");
}

TEST_CASE("argon2id rounds memory down to a multiple of 4 * lanes") {
  // 100 KiB over 6 lanes uses 96 blocks; H0 still commits to 100.
  const std::vector<std::uint8_t> pwd(32, 0x01);
  const std::vector<std::uint8_t> salt(20, 0x02);
  std::array<std::uint8_t, 32> out{};
  hash_id(out, pwd, salt, {100, 2, 6});
  CHECK(hex(out) == "196b2f81d8f72a9d5755588f847013c06c4b270352f8eae6ab82db3f9046fa36");
}

TEST_CASE("argon2id variable-length tags") {
  const Params p{32, 2, 2};
  CHECK(tag("password", "somesaltsomesalt", p, 16) == "cef00a21e1a8e9277020c4a216c905fd");
  CHECK(tag("password", "somesaltsomesalt", p, 65) ==
        "9c6dc48f58d0d5d74eaa41c7dff42a7cf6018aa33d3b1a98f764bf85c732d4df29777a56525e231e34f47b4397a57d03483f3dfc6ffc8"
        "1375de91dea18fa9eaedf");
  CHECK(tag("password", "somesaltsomesalt", p, 100) ==
        "1064a3cea4422c3c2bbc7fe8325927aa7506e3618d44eaba92f8282972a19f6cd065a6e3f446fc9eeb419d665f5307428ba2f1a428fdb"
        "d450963f11920f176c36164237fe97bdf4bb77f23759d29e4bb353f88f57ea57e875ba028f6ff3faed167e3397b");
}

TEST_CASE("lane scheduling does not change the output") {
  const Params p{512, 2, 6};
  const auto serial = tag("pw", "saltsaltsalt", p, 32, 1);
  CHECK(tag("pw", "saltsaltsalt", p, 32, 2) == serial);
  CHECK(tag("pw", "saltsaltsalt", p, 32, 6) == serial);
  CHECK(tag("pw", "saltsaltsalt", p, 32, 64) == serial);
}

TEST_CASE("argon2id rejects structurally invalid parameters") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  std::array<std::uint8_t, 32> out{};
  const auto pwd = bytes_of("password");
  const auto salt = bytes_of("somesaltsomesalt");

  CHECK(code_of([&] { hash_id(out, pwd, salt, {47, 1, 6}); }) == ErrorCode::kKdfFailure);
  CHECK(code_of([&] { hash_id(out, pwd, salt, {64, 0, 1}); }) == ErrorCode::kKdfFailure);
  CHECK(code_of([&] { hash_id(out, pwd, salt, {64, 1, 0}); }) == ErrorCode::kKdfFailure);
  CHECK(code_of([&] { hash_id(out, pwd, bytes_of("short"), {64, 1, 1}); }) == ErrorCode::kKdfFailure);
  std::array<std::uint8_t, 15> tiny{};
  CHECK(code_of([&] { hash_id(tiny, pwd, salt, {64, 1, 1}); }) == ErrorCode::kKdfFailure);

  // Exactly 8 KiB per lane is the floor and is accepted.
  CHECK_NOTHROW(hash_id(out, pwd, salt, {48, 1, 6}));
}
