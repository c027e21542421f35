#include "cswseg/text_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cswseg/errors.hpp"

namespace cswseg::text
{

  std::string escape(std::string_view raw)
  {
    std::string out;
    out.reserve(raw.size());
    for (const char c : raw)
    {
      if (is_reserved(c))
        out.push_back('\\');
      out.push_back(c);
    }
    return out;
  }

  std::string unescape(std::string_view escaped)
  {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i)
    {
      if (escaped[i] == '\\' && i + 1 < escaped.size() && is_reserved(escaped[i + 1]))
        ++i;
      out.push_back(escaped[i]);
    }
    return out;
  }

  std::vector<std::string> split_unescaped(std::string_view escaped, char delim)
  {
    std::vector<std::string> parts;
    std::string current;
    for (std::size_t i = 0; i < escaped.size(); ++i)
    {
      const char c = escaped[i];
      if (c == '\\' && i + 1 < escaped.size() && is_reserved(escaped[i + 1]))
      {
        current.push_back(escaped[++i]);
        continue;
      }
      if (c == delim)
      {
        parts.push_back(std::move(current));
        current.clear();
        continue;
      }
      current.push_back(c);
    }
    parts.push_back(std::move(current));
    return parts;
  }

  std::string read_file(const std::filesystem::path& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
      throw IoError("cannot read " + path.string());
    return buffer.str();
  }

  void write_file(const std::filesystem::path& path, std::string_view content)
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw IoError("cannot write " + path.string());
  }

  std::vector<std::string> split_lines(std::string_view content)
  {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size())
    {
      auto end = content.find('\n', start);
      if (end == std::string_view::npos)
        end = content.size();
      auto line = content.substr(start, end - start);
      if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
      lines.emplace_back(line);
      start = end + 1;
    }
    return lines;
  }

  std::vector<std::string> read_lines(const std::filesystem::path& path)
  {
    return split_lines(read_file(path));
  }

  std::vector<std::string> split(std::string_view text, char delim)
  {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true)
    {
      const auto end = text.find(delim, start);
      if (end == std::string_view::npos)
      {
        parts.emplace_back(text.substr(start));
        return parts;
      }
      parts.emplace_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  std::string join(const std::vector<std::string>& parts, std::string_view delim)
  {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
      if (i > 0)
        out += delim;
      out += parts[i];
    }
    return out;
  }

  std::string format_fixed(double value, int decimals)
  {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    std::string out(buffer);
    if (out == "-0" || out.rfind("-0.", 0) == 0)
    {
      // Avoid printing negative zero after rounding.
      if (out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    }
    return out;
  }

}
