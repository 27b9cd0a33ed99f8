#include "layerkey/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf16.h>

#include <climits>

#include "layerkey/error.hpp"

namespace layerkey {
namespace {

using Utf16 = SecureVector<UChar>;

[[noreturn]] void fail_icu(UErrorCode status) {
  if (status == U_INVALID_CHAR_FOUND || status == U_ILLEGAL_CHAR_FOUND) {
    throw Error(ErrorCode::kInvalidUtf8, "input is not valid UTF-8");
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("unicode conversion failed: ") + u_errorName(status));
}

Utf16 to_utf16(std::string_view utf8) {
  if (utf8.size() > static_cast<std::size_t>(INT32_MAX)) throw Error(ErrorCode::kInvalidArgument, "input too long");
  Utf16 out(utf8.size() + 1);
  int32_t length = 0;
  UErrorCode status = U_ZERO_ERROR;
  u_strFromUTF8(out.data(), static_cast<int32_t>(out.size()), &length, utf8.data(),
                static_cast<int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) fail_icu(status);
  out.resize(static_cast<std::size_t>(length));
  return out;
}

// Bounds of `text` with leading and trailing White_Space removed.
std::pair<int32_t, int32_t> trimmed_range(const Utf16& text) {
  const auto length = static_cast<int32_t>(text.size());
  int32_t begin = 0;
  while (begin < length) {
    int32_t next = begin;
    UChar32 c = 0;
    U16_NEXT(text.data(), next, length, c);
    if (!u_isUWhiteSpace(c)) break;
    begin = next;
  }
  int32_t end = length;
  while (end > begin) {
    int32_t prev = end;
    UChar32 c = 0;
    U16_PREV(text.data(), begin, prev, c);
    if (!u_isUWhiteSpace(c)) break;
    end = prev;
  }
  return {begin, end};
}

}  // namespace

NormalizedText normalize(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  const UNormalizer2* nfc = unorm2_getNFCInstance(&status);
  if (U_FAILURE(status)) fail_icu(status);

  const Utf16 wide = to_utf16(raw);
  const auto [begin, end] = trimmed_range(wide);
  if (begin == end) throw Error(ErrorCode::kEmptyAfterNormalization, "input is empty after normalization");

  // Canonical composition never grows text by more than a small factor; retry on overflow.
  Utf16 composed(static_cast<std::size_t>(end - begin) * 3 + 16);
  int32_t composed_length = 0;
  for (;;) {
    status = U_ZERO_ERROR;
    composed_length = unorm2_normalize(nfc, wide.data() + begin, end - begin, composed.data(),
                                       static_cast<int32_t>(composed.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
      composed.assign(static_cast<std::size_t>(composed_length) + 1, 0);
      continue;
    }
    if (U_FAILURE(status)) fail_icu(status);
    break;
  }

  SecureVector<char> utf8(static_cast<std::size_t>(composed_length) * 3 + 1);
  int32_t utf8_length = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(utf8.data(), static_cast<int32_t>(utf8.size()), &utf8_length, composed.data(), composed_length,
              &status);
  if (U_FAILURE(status)) fail_icu(status);

  SecureString text;
  text.append({utf8.data(), static_cast<std::size_t>(utf8_length)});
  return NormalizedText(std::move(text));
}

}  // namespace layerkey
