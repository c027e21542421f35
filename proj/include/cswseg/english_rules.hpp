#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cswseg/segmenter.hpp"

namespace cswseg
{

  // English surface segmentation, rules tried in order:
  //  1-3. irregular-form lexicon (modified stems such as monki+es or car+ing,
  //       and forms that stay whole such as "went");
  //  4.   "es" after a sibilant-final stem (s, x, z, ch, sh);
  //  5.   a regular suffix (s, ed, ing, en) leaving at least min_stem_len chars.
  // Matching is case-insensitive; output keeps the input casing.
  class EnglishRules : public Segmenter
  {
  public:
    struct Config
    {
      // Lowercased word -> morph lengths in characters.
      std::map<std::string, std::vector<std::size_t>> irregular_forms;
      std::vector<std::string> es_stem_endings = {"s", "x", "z", "ch", "sh"};
      std::vector<std::string> regular_suffixes = {"s", "ed", "ing", "en"};
      std::size_t min_stem_len = 3;
    };

    EnglishRules();
    explicit EnglishRules(Config config);

    // Adds a lexicon entry from an example analysis (e.g. monki#es).
    void add_irregular(const Analysis& analysis);

    Analysis segment(std::string_view token) const override;
    std::string describe() const override;

    const Config& config() const { return _config; }

    static Config default_config();

  private:
    Config _config;
  };

}
