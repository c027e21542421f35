#include "cswseg/unicode.hpp"

#include <array>
#include <unordered_map>
#include <utility>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "cswseg/errors.hpp"

namespace cswseg::unicode
{

  std::u32string decode(std::string_view text, std::size_t line_no)
  {
    std::u32string out;
    out.reserve(text.size());
    const auto* data = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length)
    {
      const int32_t start = i;
      UChar32 c;
      U8_NEXT(data, i, length, c);
      if (c < 0)
        throw DecodeError(line_no, "invalid UTF-8 sequence at byte " + std::to_string(start));
      out.push_back(static_cast<code_point_t>(c));
    }
    return out;
  }

  std::string encode(code_point_t cp)
  {
    std::string out;
    uint8_t buffer[U8_MAX_LENGTH];
    int32_t offset = 0;
    UBool error = false;
    U8_APPEND(buffer, offset, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (!error)
      out.assign(reinterpret_cast<const char*>(buffer), offset);
    return out;
  }

  std::string encode(std::u32string_view cps)
  {
    std::string out;
    out.reserve(cps.size());
    for (const auto cp : cps)
      out += encode(cp);
    return out;
  }

  bool is_valid_utf8(std::string_view text)
  {
    const auto* data = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length)
    {
      UChar32 c;
      U8_NEXT(data, i, length, c);
      if (c < 0)
        return false;
    }
    return true;
  }

  std::vector<std::string> split_chars(std::string_view text)
  {
    std::vector<std::string> chars;
    chars.reserve(text.size());
    const auto* data = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length)
    {
      const int32_t start = i;
      U8_FWD_1(data, i, length);
      chars.emplace_back(text.substr(start, i - start));
    }
    return chars;
  }

  std::size_t char_count(std::string_view text)
  {
    std::size_t count = 0;
    for (const char c : text)
      if ((static_cast<unsigned char>(c) & 0xC0) != 0x80)
        ++count;
    return count;
  }

  std::string nfc(std::string_view text)
  {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status))
      throw std::runtime_error("ICU NFC normalizer unavailable");
    const icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    if (normalizer->isNormalized(input, status) && U_SUCCESS(status))
      return std::string(text);
    status = U_ZERO_ERROR;
    const icu::UnicodeString normalized = normalizer->normalize(input, status);
    if (U_FAILURE(status))
      throw std::runtime_error("NFC normalization failed");
    std::string out;
    normalized.toUTF8String(out);
    return out;
  }

  bool is_whitespace(code_point_t cp)
  {
    // Python's str.split() also treats the information separators as whitespace.
    if (cp >= 0x1C && cp <= 0x1F)
      return true;
    return u_isUWhiteSpace(static_cast<UChar32>(cp));
  }

  bool is_letter(code_point_t cp)
  {
    return U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_L_MASK;
  }

  bool is_mark(code_point_t cp)
  {
    return U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_M_MASK;
  }

  bool is_digit(code_point_t cp)
  {
    return u_charType(static_cast<UChar32>(cp)) == U_DECIMAL_DIGIT_NUMBER;
  }

  bool is_punctuation(code_point_t cp)
  {
    const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
    if (mask & (U_GC_P_MASK | U_GC_S_MASK))
      return true;
    // Non-decimal numbers (fractions, superscripts) and stray controls count as symbols.
    return (mask & (U_GC_NL_MASK | U_GC_NO_MASK | U_GC_CC_MASK | U_GC_CF_MASK))
      && !is_whitespace(cp) && cp != 0x200C && cp != 0x200D;
  }

  bool is_arabic(code_point_t cp)
  {
    UErrorCode status = U_ZERO_ERROR;
    return uscript_getScript(static_cast<UChar32>(cp), &status) == USCRIPT_ARABIC;
  }

  bool is_latin(code_point_t cp)
  {
    UErrorCode status = U_ZERO_ERROR;
    return uscript_getScript(static_cast<UChar32>(cp), &status) == USCRIPT_LATIN;
  }

  bool is_emoji(code_point_t cp)
  {
    const auto c = static_cast<UChar32>(cp);
    if (c == 0xFE0F || c == 0x200D || c == 0x20E3)
      return true;
    if (c >= 0x1F1E6 && c <= 0x1F1FF)  // regional indicators
      return true;
    return u_hasBinaryProperty(c, UCHAR_EXTENDED_PICTOGRAPHIC)
      || u_hasBinaryProperty(c, UCHAR_EMOJI_MODIFIER);
  }

  std::string to_lower(std::string_view text)
  {
    std::string out;
    out.reserve(text.size());
    for (const auto cp : decode(text))
      out += encode(static_cast<code_point_t>(u_tolower(static_cast<UChar32>(cp))));
    return out;
  }

  std::vector<std::string> split_whitespace(std::string_view text)
  {
    std::vector<std::string> words;
    std::string current;
    const auto* data = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length)
    {
      const int32_t start = i;
      UChar32 c;
      U8_NEXT(data, i, length, c);
      if (c >= 0 && is_whitespace(static_cast<code_point_t>(c)))
      {
        if (!current.empty())
          words.push_back(std::move(current));
        current.clear();
      }
      else
        current.append(text.substr(start, i - start));
    }
    if (!current.empty())
      words.push_back(std::move(current));
    return words;
  }

  std::string trim(std::string_view text)
  {
    const auto cps = decode(text);
    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && is_whitespace(cps[begin]))
      ++begin;
    while (end > begin && is_whitespace(cps[end - 1]))
      --end;
    return encode(std::u32string_view(cps).substr(begin, end - begin));
  }

  namespace
  {
    constexpr std::array<std::pair<code_point_t, char>, 50> buckwalter_table = {{
      {0x0621, '\''}, {0x0622, '|'}, {0x0623, '>'}, {0x0624, '&'}, {0x0625, '<'},
      {0x0626, '}'}, {0x0627, 'A'}, {0x0628, 'b'}, {0x0629, 'p'}, {0x062A, 't'},
      {0x062B, 'v'}, {0x062C, 'j'}, {0x062D, 'H'}, {0x062E, 'x'}, {0x062F, 'd'},
      {0x0630, '*'}, {0x0631, 'r'}, {0x0632, 'z'}, {0x0633, 's'}, {0x0634, '$'},
      {0x0635, 'S'}, {0x0636, 'D'}, {0x0637, 'T'}, {0x0638, 'Z'}, {0x0639, 'E'},
      {0x063A, 'g'}, {0x0640, '_'}, {0x0641, 'f'}, {0x0642, 'q'}, {0x0643, 'k'},
      {0x0644, 'l'}, {0x0645, 'm'}, {0x0646, 'n'}, {0x0647, 'h'}, {0x0648, 'w'},
      {0x0649, 'Y'}, {0x064A, 'y'}, {0x064B, 'F'}, {0x064C, 'N'}, {0x064D, 'K'},
      {0x064E, 'a'}, {0x064F, 'u'}, {0x0650, 'i'}, {0x0651, '~'}, {0x0652, 'o'},
      {0x0670, '`'}, {0x0671, '{'}, {0x06A4, 'V'}, {0x06AF, 'G'}, {0x067E, 'P'},
    }};
  }

  std::string to_buckwalter(std::string_view arabic)
  {
    static const auto forward = [] {
      std::unordered_map<code_point_t, char> map;
      for (const auto& [cp, ch] : buckwalter_table)
        map.emplace(cp, ch);
      return map;
    }();
    std::string out;
    for (const auto cp : decode(arabic))
    {
      const auto it = forward.find(cp);
      if (it != forward.end())
        out.push_back(it->second);
      else
        out += encode(cp);
    }
    return out;
  }

  std::string from_buckwalter(std::string_view ascii)
  {
    static const auto backward = [] {
      std::unordered_map<char, code_point_t> map;
      for (const auto& [cp, ch] : buckwalter_table)
        map.emplace(ch, cp);
      return map;
    }();
    std::string out;
    for (const auto cp : decode(ascii))
    {
      if (cp < 0x80)
      {
        const auto it = backward.find(static_cast<char>(cp));
        if (it != backward.end())
        {
          out += encode(it->second);
          continue;
        }
      }
      out += encode(cp);
    }
    return out;
  }

}
