#include "cswseg/arabic_rules.hpp"

#include <algorithm>

#include "cswseg/errors.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::string_view to_string(ArabicScheme scheme)
  {
    return scheme == ArabicScheme::ATB ? "atb" : "d3";
  }

  ArabicScheme arabic_scheme_from_string(std::string_view name)
  {
    if (name == "atb" || name == "ATB")
      return ArabicScheme::ATB;
    if (name == "d3" || name == "D3")
      return ArabicScheme::D3;
    throw ArgumentError("unknown Arabic scheme: " + std::string(name));
  }

  namespace
  {
    std::vector<std::u32string> longest_first(const std::vector<std::string>& clitics)
    {
      std::vector<std::u32string> out;
      for (const auto& clitic : clitics)
      {
        if (clitic.empty())
          throw ValidationError("empty clitic in Arabic rule set");
        out.push_back(unicode::decode(clitic));
      }
      std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
      return out;
    }

    bool starts_with(std::u32string_view text, std::u32string_view prefix)
    {
      return text.size() >= prefix.size() && text.substr(0, prefix.size()) == prefix;
    }

    bool ends_with(std::u32string_view text, std::u32string_view suffix)
    {
      return text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
    }
  }

  ArabicRules::Config ArabicRules::default_config(ArabicScheme scheme)
  {
    Config config;
    config.scheme = scheme;
    // w f b l k s
    config.proclitics = {"و", "ف", "ب", "ل", "ك", "س"};
    // pronominal enclitics: y ny k h hA nA km hm kn hn kmA hmA
    config.enclitics = {"ي", "ني", "ك", "ه", "ها", "نا", "كم", "هم", "كن", "هن", "كما", "هما"};
    return config;
  }

  ArabicRules::ArabicRules(ArabicScheme scheme)
    : ArabicRules(default_config(scheme))
  {
  }

  ArabicRules::ArabicRules(Config config)
    : _config(std::move(config))
    , _pro(longest_first(_config.proclitics))
    , _enc(longest_first(_config.enclitics))
    , _article(unicode::decode(_config.article))
  {
    if (_config.min_stem_len == 0)
      throw ArgumentError("min_stem_len must be at least 1");
  }

  std::string ArabicRules::normalize(std::string_view token) const
  {
    std::u32string cps = unicode::decode(token);
    for (auto& cp : cps)
    {
      if (_config.normalize_alif && (cp == U'أ' || cp == U'إ' || cp == U'آ'))
        cp = U'ا';
      else if (_config.normalize_ya && cp == U'ى')
        cp = U'ي';
    }
    return unicode::encode(cps);
  }

  Analysis ArabicRules::segment(std::string_view token) const
  {
    if (token.empty())
      throw ArgumentError("cannot segment an empty token");
    const std::u32string word = unicode::decode(normalize(token));
    const std::size_t min_stem = _config.min_stem_len;

    std::size_t begin = 0;
    std::size_t end = word.size();
    std::vector<std::u32string> prefixes;
    std::vector<std::u32string> suffixes;

    const auto remaining = [&] { return std::u32string_view(word).substr(begin, end - begin); };

    for (std::size_t n = 0; n < _config.max_proclitics; ++n)
    {
      bool stripped = false;
      for (const auto& clitic : _pro)
      {
        if (starts_with(remaining(), clitic) && end - begin - clitic.size() >= min_stem)
        {
          prefixes.push_back(clitic);
          begin += clitic.size();
          stripped = true;
          break;
        }
      }
      if (!stripped)
        break;
    }

    if (_config.scheme == ArabicScheme::D3 && !_article.empty() && starts_with(remaining(), _article)
        && end - begin - _article.size() >= min_stem)
    {
      prefixes.push_back(_article);
      begin += _article.size();
    }

    for (std::size_t n = 0; n < _config.max_enclitics; ++n)
    {
      bool stripped = false;
      for (const auto& clitic : _enc)
      {
        if (ends_with(remaining(), clitic) && end - begin - clitic.size() >= min_stem)
        {
          suffixes.push_back(clitic);
          end -= clitic.size();
          stripped = true;
          break;
        }
      }
      if (!stripped)
        break;
    }

    Analysis analysis;
    for (const auto& prefix : prefixes)
      analysis.morphs.push_back(unicode::encode(prefix));
    analysis.morphs.push_back(unicode::encode(remaining()));
    for (auto it = suffixes.rbegin(); it != suffixes.rend(); ++it)
      analysis.morphs.push_back(unicode::encode(*it));
    return analysis;
  }

  bool ArabicRules::is_proclitic_token(std::string_view token) const
  {
    const auto cps = unicode::decode(normalize(token));
    if (cps == _article)
      return true;
    return std::find(_pro.begin(), _pro.end(), cps) != _pro.end();
  }

  bool ArabicRules::is_enclitic_token(std::string_view token) const
  {
    const auto cps = unicode::decode(normalize(token));
    return std::find(_enc.begin(), _enc.end(), cps) != _enc.end();
  }

  std::string ArabicRules::describe() const
  {
    return "ar-rules(scheme=" + std::string(to_string(_config.scheme)) + ", min_stem_len="
      + std::to_string(_config.min_stem_len) + ")";
  }

}
