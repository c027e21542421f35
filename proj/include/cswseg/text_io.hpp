#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cswseg::text
{

  // Characters with a meaning in the on-disk formats: '#' joins morphs,
  // '@' forms the "@@" continuation marker, '\' escapes.
  inline bool is_reserved(char c)
  {
    return c == '#' || c == '@' || c == '\\';
  }

  std::string escape(std::string_view raw);
  // A backslash before a non-reserved character is kept literally.
  std::string unescape(std::string_view escaped);
  // Splits on unescaped `delim` and unescapes each part.
  std::vector<std::string> split_unescaped(std::string_view escaped, char delim);

  std::string read_file(const std::filesystem::path& path);
  void write_file(const std::filesystem::path& path, std::string_view content);
  // Lines without terminators; a trailing '\r' is dropped.
  std::vector<std::string> read_lines(const std::filesystem::path& path);
  std::vector<std::string> split_lines(std::string_view content);

  std::vector<std::string> split(std::string_view text, char delim);
  std::string join(const std::vector<std::string>& parts, std::string_view delim);

  // Fixed-precision formatting used by all reports.
  std::string format_fixed(double value, int decimals);

}
