#include "cswseg/segmenter.hpp"

#include "cswseg/text_io.hpp"

namespace cswseg
{

  std::string Analysis::surface() const
  {
    std::string out;
    for (const auto& morph : morphs)
      out += morph;
    return out;
  }

  std::string to_hash_string(const Analysis& analysis)
  {
    std::string out;
    for (std::size_t i = 0; i < analysis.morphs.size(); ++i)
    {
      if (i > 0)
        out.push_back('#');
      out += text::escape(analysis.morphs[i]);
    }
    return out;
  }

  Analysis parse_hash_string(std::string_view text, char delim)
  {
    return Analysis{text::split_unescaped(text, delim)};
  }

}
