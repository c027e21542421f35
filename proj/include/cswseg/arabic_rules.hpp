#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cswseg/segmenter.hpp"

namespace cswseg
{

  enum class ArabicScheme
  {
    ATB,  // clitics split, definite article kept on the stem
    D3,   // additionally splits the definite article
  };

  std::string_view to_string(ArabicScheme scheme);
  ArabicScheme arabic_scheme_from_string(std::string_view name);

  // Deterministic clitic stripper approximating the ATB/D3 tokenization
  // schemes. Clitics are stored in Arabic script.
  class ArabicRules : public Segmenter
  {
  public:
    struct Config
    {
      ArabicScheme scheme = ArabicScheme::ATB;
      std::vector<std::string> proclitics;
      std::vector<std::string> enclitics;
      std::string article = "ال";
      std::size_t min_stem_len = 2;
      std::size_t max_proclitics = 2;
      std::size_t max_enclitics = 1;
      bool normalize_alif = true;  // أ إ آ -> ا
      bool normalize_ya = true;    // ى -> ي
    };

    explicit ArabicRules(ArabicScheme scheme = ArabicScheme::ATB);
    explicit ArabicRules(Config config);

    static Config default_config(ArabicScheme scheme);

    Analysis segment(std::string_view token) const override;
    std::string normalize(std::string_view token) const override;
    std::string describe() const override;

    const Config& config() const { return _config; }

    // Whole-token clitic checks used by MCS detection. The definite article
    // counts as a proclitic here regardless of scheme.
    bool is_proclitic_token(std::string_view token) const;
    bool is_enclitic_token(std::string_view token) const;

  private:
    Config _config;
    // Longest first so greedy matching prefers e.g. "هم" over "ه".
    std::vector<std::u32string> _pro;
    std::vector<std::u32string> _enc;
    std::u32string _article;
  };

}
