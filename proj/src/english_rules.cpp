#include "cswseg/english_rules.hpp"

#include "cswseg/errors.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  namespace
  {
    // Shipped lexicon. Modified stems keep the surface split of the form;
    // single-element entries are words that must stay whole even though
    // they end in a regular suffix.
    const char* const default_irregular[] = {
      "monki#es", "car#ing", "went",
      "stori#es", "citi#es", "studi#es", "tri#es", "cri#es", "babi#es", "parti#es",
      "compani#es", "famili#es", "countri#es", "activiti#es", "hobbi#es",
      "mak#ing", "tak#ing", "hav#ing", "giv#ing", "liv#ing", "com#ing", "us#ing",
      "writ#ing", "driv#ing", "danc#ing", "mov#ing", "lov#ing",
      "runn#ing", "gett#ing", "sitt#ing", "swimm#ing", "shopp#ing", "stopp#ing", "plann#ing",
      "stopp#ed", "plann#ed",
      "this", "is", "was", "has", "his", "yes", "us", "bus", "plus", "thus", "always",
      "news", "series", "less", "unless", "class", "business", "process", "address",
      "bed", "red", "need", "speed", "feed", "seed", "indeed", "hundred",
      "thing", "nothing", "something", "anything", "everything", "king", "ring", "sing", "wing",
      "bring", "spring", "morning", "evening", "during", "ceiling",
      "been", "seen", "even", "open", "often", "then", "when", "ten", "men", "women",
      "children", "garden", "kitchen", "chicken", "chosen", "golden", "listen", "happen",
      "seven", "eleven", "heaven", "oven", "screen", "green", "between", "queen",
      "gone", "did", "done", "made", "took", "came", "saw", "got", "said", "told", "knew",
      "thought", "brought", "bought", "felt", "left", "kept", "meant", "sent", "spent", "found",
    };

    bool ends_with(std::string_view text, std::string_view suffix)
    {
      return text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
    }

    // Splits `token` at the given character lengths (first n-1 lengths, rest
    // goes to the last morph).
    Analysis split_by_lengths(std::string_view token, const std::vector<std::size_t>& lengths)
    {
      const auto chars = unicode::split_chars(token);
      Analysis analysis;
      std::size_t pos = 0;
      for (std::size_t i = 0; i < lengths.size(); ++i)
      {
        const std::size_t take = (i + 1 == lengths.size()) ? chars.size() - pos : lengths[i];
        std::string morph;
        for (std::size_t k = 0; k < take; ++k)
          morph += chars[pos + k];
        pos += take;
        analysis.morphs.push_back(std::move(morph));
      }
      return analysis;
    }

    Analysis split_suffix(std::string_view token, std::size_t suffix_chars)
    {
      const std::size_t total = unicode::char_count(token);
      return split_by_lengths(token, {total - suffix_chars, suffix_chars});
    }
  }

  EnglishRules::EnglishRules()
    : EnglishRules(default_config())
  {
  }

  EnglishRules::EnglishRules(Config config)
    : _config(std::move(config))
  {
  }

  EnglishRules::Config EnglishRules::default_config()
  {
    EnglishRules rules(Config{});
    for (const char* entry : default_irregular)
      rules.add_irregular(parse_hash_string(entry));
    return rules._config;
  }

  void EnglishRules::add_irregular(const Analysis& analysis)
  {
    if (analysis.morphs.empty())
      throw ValidationError("irregular form without morphs");
    std::vector<std::size_t> lengths;
    for (const auto& morph : analysis.morphs)
    {
      if (morph.empty())
        throw ValidationError("irregular form '" + to_hash_string(analysis) + "' has an empty morph");
      lengths.push_back(unicode::char_count(morph));
    }
    _config.irregular_forms[unicode::to_lower(analysis.surface())] = std::move(lengths);
  }

  Analysis EnglishRules::segment(std::string_view token) const
  {
    if (token.empty())
      throw ArgumentError("cannot segment an empty token");
    const std::string lower = unicode::to_lower(token);

    // Rules 1-3.
    if (const auto it = _config.irregular_forms.find(lower); it != _config.irregular_forms.end())
    {
      if (unicode::char_count(lower) == unicode::char_count(token))
        return split_by_lengths(token, it->second);
    }

    const std::size_t length = unicode::char_count(lower);

    // Rule 4.
    if (ends_with(lower, "es") && length >= 2 + _config.min_stem_len)
    {
      const std::string_view stem = std::string_view(lower).substr(0, lower.size() - 2);
      for (const auto& ending : _config.es_stem_endings)
        if (ends_with(stem, ending))
          return split_suffix(token, 2);
    }

    // Rule 5.
    for (const auto& suffix : _config.regular_suffixes)
    {
      const std::size_t suffix_len = unicode::char_count(suffix);
      if (ends_with(lower, suffix) && length >= suffix_len + _config.min_stem_len)
        return split_suffix(token, suffix_len);
    }

    return Analysis{{std::string(token)}};
  }

  std::string EnglishRules::describe() const
  {
    return "en-rules(lexicon=" + std::to_string(_config.irregular_forms.size())
      + ", min_stem_len=" + std::to_string(_config.min_stem_len) + ")";
  }

}
