#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cswseg::unicode
{

  using code_point_t = char32_t;

  // Decodes UTF-8; throws DecodeError(line_no, ...) on malformed input.
  std::u32string decode(std::string_view text, std::size_t line_no = 0);
  std::string encode(code_point_t cp);
  std::string encode(std::u32string_view cps);

  bool is_valid_utf8(std::string_view text);

  // Splits a UTF-8 string into one string per code point. Input must be valid.
  std::vector<std::string> split_chars(std::string_view text);
  std::size_t char_count(std::string_view text);

  std::string nfc(std::string_view text);

  bool is_whitespace(code_point_t cp);
  bool is_letter(code_point_t cp);
  bool is_mark(code_point_t cp);
  bool is_digit(code_point_t cp);
  // Punctuation or symbol, excluding letters, digits, marks and whitespace.
  bool is_punctuation(code_point_t cp);
  bool is_arabic(code_point_t cp);
  bool is_latin(code_point_t cp);
  bool is_emoji(code_point_t cp);

  std::string to_lower(std::string_view text);

  // Splits on runs of Unicode whitespace (same rule as Python's str.split()).
  std::vector<std::string> split_whitespace(std::string_view text);
  std::string trim(std::string_view text);

  // Buckwalter transliteration; characters without a mapping pass through.
  std::string to_buckwalter(std::string_view arabic);
  std::string from_buckwalter(std::string_view ascii);

}
