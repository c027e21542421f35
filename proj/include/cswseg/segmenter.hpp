#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cswseg
{

  // Ordered, nonempty morph sequence for one word.
  struct Analysis
  {
    std::vector<std::string> morphs;

    std::string surface() const;
    std::size_t size() const { return morphs.size(); }
    bool operator==(const Analysis&) const = default;
  };

  // Joins morphs with '#', escaping reserved characters inside morphs.
  std::string to_hash_string(const Analysis& analysis);
  Analysis parse_hash_string(std::string_view text, char delim = '#');

  class Segmenter
  {
  public:
    virtual ~Segmenter() = default;

    // Total on nonempty tokens. Concatenating the result gives back the token
    // after normalize().
    virtual Analysis segment(std::string_view token) const = 0;

    // Declared surface normalization; identity unless overridden.
    virtual std::string normalize(std::string_view token) const { return std::string(token); }

    virtual std::string describe() const = 0;
  };

  using SegmenterPtr = std::shared_ptr<const Segmenter>;

  class IdentitySegmenter : public Segmenter
  {
  public:
    Analysis segment(std::string_view token) const override { return Analysis{{std::string(token)}}; }
    std::string describe() const override { return "identity"; }
  };

}
