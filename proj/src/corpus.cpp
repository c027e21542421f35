#include "cswseg/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/random.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::string_view to_string(Script script)
  {
    switch (script)
    {
    case Script::Arabic:
      return "arabic";
    case Script::Latin:
      return "latin";
    case Script::Numeric:
      return "numeric";
    case Script::Punct:
      return "punct";
    case Script::Mixed:
      return "mixed";
    }
    return "unknown";
  }

  Script script_from_string(std::string_view name)
  {
    if (name == "arabic")
      return Script::Arabic;
    if (name == "latin")
      return Script::Latin;
    if (name == "numeric")
      return Script::Numeric;
    if (name == "punct")
      return Script::Punct;
    if (name == "mixed")
      return Script::Mixed;
    throw ArgumentError("unknown script class: " + std::string(name));
  }

  std::string_view to_string(Language language)
  {
    switch (language)
    {
    case Language::EGY:
      return "EGY";
    case Language::EN:
      return "EN";
    case Language::Other:
      return "Other";
    }
    return "unknown";
  }

  Script classify_script(std::string_view token)
  {
    bool arabic = false;
    bool latin = false;
    bool digit = false;
    for (const auto cp : unicode::decode(token))
    {
      // Combining marks carry no class of their own.
      if (unicode::is_mark(cp))
        continue;
      if (unicode::is_letter(cp))
      {
        // Letters of any third script are grouped with the foreign (Latin) side.
        if (unicode::is_arabic(cp))
          arabic = true;
        else
          latin = true;
      }
      else if (unicode::is_digit(cp))
        digit = true;
    }
    if (arabic && latin)
      return Script::Mixed;
    if (arabic)
      return Script::Arabic;
    if (latin)
      return Script::Latin;
    return digit ? Script::Numeric : Script::Punct;
  }

  Language language_of(Script script)
  {
    switch (script)
    {
    case Script::Arabic:
    case Script::Mixed:
      return Language::EGY;
    case Script::Latin:
      return Language::EN;
    default:
      return Language::Other;
    }
  }

  Token Token::make(std::string surface)
  {
    const auto script = classify_script(surface);
    return Token{std::move(surface), script};
  }

  std::string normalize_arabic_letters(std::string_view text)
  {
    std::u32string cps = unicode::decode(text);
    for (auto& cp : cps)
    {
      if (cp == U'ى')
        cp = U'ي';
      else if (cp == U'أ')
        cp = U'ا';
    }
    return unicode::encode(cps);
  }

  namespace
  {
    const std::regex& url_pattern()
    {
      static const std::regex pattern(R"((https?://|www\.)\S+)", std::regex::icase);
      return pattern;
    }

    // Whitespace-delimited ASCII emoticons such as ":)", ":-D", ";p", "<3".
    const std::regex& emoticon_pattern()
    {
      static const std::regex pattern(
        R"((^|\s)([:;=][-o*'^]?[)\](\[dDpPoO/\\|@3*]+|<\/?3+|\^_*\^)(?=\s|$))");
      return pattern;
    }

    // Emoticon-shaped punctuation runs left over after tokenization.
    const std::regex& emoticon_token_pattern()
    {
      static const std::regex pattern(R"([:;=][-*'^]?[)\](\[/\\|@*]+|\^_*\^)");
      return pattern;
    }

    enum class CharClass
    {
      Word,
      Digit,
      Punct,
    };

    CharClass char_class(unicode::code_point_t cp, const PreprocessOptions& options)
    {
      if (options.split_digits && unicode::is_digit(cp))
        return CharClass::Digit;
      if (options.split_punctuation && unicode::is_punctuation(cp))
        return CharClass::Punct;
      return CharClass::Word;
    }

    void split_word(std::u32string_view word,
                    const PreprocessOptions& options,
                    std::vector<std::string>& out)
    {
      std::size_t start = 0;
      CharClass current = CharClass::Word;
      for (std::size_t i = 0; i < word.size(); ++i)
      {
        // Marks stay attached to whatever precedes them.
        const auto cls = (i > 0 && unicode::is_mark(word[i])) ? current : char_class(word[i], options);
        if (i > 0 && cls != current)
        {
          out.push_back(unicode::encode(word.substr(start, i - start)));
          start = i;
        }
        current = cls;
      }
      if (start < word.size())
        out.push_back(unicode::encode(word.substr(start)));
    }
  }

  Preprocessor::Preprocessor(PreprocessOptions options)
    : _options(std::move(options))
  {
    for (const auto& pattern : _options.markup_patterns)
    {
      try
      {
        _markup.emplace_back(pattern);
      }
      catch (const std::regex_error& e)
      {
        throw ArgumentError("invalid markup pattern '" + pattern + "': " + e.what());
      }
    }
  }

  std::optional<Sentence> Preprocessor::operator()(std::string_view line, std::size_t line_no) const
  {
    // Validate before anything else touches the bytes.
    unicode::decode(line, line_no);
    std::string text = text::unescape(unicode::nfc(line));

    for (const auto& pattern : _markup)
      text = std::regex_replace(text, pattern, " ");
    if (_options.remove_urls)
      text = std::regex_replace(text, url_pattern(), " ");
    if (_options.remove_emoticons)
    {
      text = std::regex_replace(text, emoticon_pattern(), "$1 ");
      std::u32string cps = unicode::decode(text, line_no);
      for (auto& cp : cps)
        if (unicode::is_emoji(cp))
          cp = U' ';
      text = unicode::encode(cps);
    }
    text = unicode::trim(text);

    Sentence sentence;
    sentence.id = line_no;
    std::vector<std::string> pieces;
    for (const auto& word : unicode::split_whitespace(text))
    {
      pieces.clear();
      split_word(unicode::decode(word, line_no), _options, pieces);
      for (auto& piece : pieces)
      {
        if (_options.remove_emoticons && std::regex_match(piece, emoticon_token_pattern()))
          continue;
        if (_options.normalize_arabic)
          piece = normalize_arabic_letters(piece);
        sentence.tokens.push_back(Token::make(std::move(piece)));
      }
    }
    if (sentence.tokens.empty())
      return std::nullopt;
    return sentence;
  }

  std::string render(const Sentence& sentence)
  {
    std::string out;
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
    {
      if (i > 0)
        out.push_back(' ');
      out += text::escape(sentence.tokens[i].surface);
    }
    return out;
  }

  Sentence parse_sentence(std::string_view line, std::size_t id)
  {
    Sentence sentence;
    sentence.id = id;
    unicode::decode(line, id);
    for (const auto& word : unicode::split_whitespace(line))
      sentence.tokens.push_back(Token::make(text::unescape(word)));
    return sentence;
  }

  std::string_view to_string(SentenceCategory category)
  {
    switch (category)
    {
    case SentenceCategory::MonoEGY:
      return "MonoEGY";
    case SentenceCategory::MonoEN:
      return "MonoEN";
    case SentenceCategory::CS:
      return "CS";
    case SentenceCategory::MCS:
      return "MCS";
    case SentenceCategory::Undetermined:
      return "Undetermined";
    }
    return "unknown";
  }

  SentenceCategory category_from_string(std::string_view name)
  {
    for (const auto category : {SentenceCategory::MonoEGY,
                                SentenceCategory::MonoEN,
                                SentenceCategory::CS,
                                SentenceCategory::MCS,
                                SentenceCategory::Undetermined})
      if (name == to_string(category))
        return category;
    throw ArgumentError("unknown sentence category: " + std::string(name));
  }

  std::string_view to_string(McsMode mode)
  {
    return mode == McsMode::MixedScript ? "mixed-script" : "clitic-adjacent";
  }

  McsMode mcs_mode_from_string(std::string_view name)
  {
    if (name == "mixed-script")
      return McsMode::MixedScript;
    if (name == "clitic-adjacent")
      return McsMode::CliticAdjacent;
    throw ArgumentError("unknown MCS mode: " + std::string(name));
  }

  namespace
  {
    bool clitic_adjacent(const Sentence& sentence, const ArabicRules& rules)
    {
      const auto& tokens = sentence.tokens;
      for (std::size_t i = 0; i < tokens.size(); ++i)
      {
        if (tokens[i].script != Script::Arabic)
          continue;
        const bool next_latin = i + 1 < tokens.size() && tokens[i + 1].script == Script::Latin;
        const bool prev_latin = i > 0 && tokens[i - 1].script == Script::Latin;
        if (next_latin && rules.is_proclitic_token(tokens[i].surface))
          return true;
        if (prev_latin && rules.is_enclitic_token(tokens[i].surface))
          return true;
      }
      return false;
    }
  }

  SentenceCategory categorize(const Sentence& sentence, McsMode mode, const ArabicRules* rules)
  {
    bool arabic = false;
    bool latin = false;
    bool mixed = false;
    for (const auto& token : sentence.tokens)
    {
      switch (token.script)
      {
      case Script::Arabic:
        arabic = true;
        break;
      case Script::Latin:
        latin = true;
        break;
      case Script::Mixed:
        arabic = latin = mixed = true;
        break;
      default:
        break;
      }
    }
    if (!arabic && !latin)
      return SentenceCategory::Undetermined;
    if (!latin)
      return SentenceCategory::MonoEGY;
    if (!arabic)
      return SentenceCategory::MonoEN;

    bool morphological = false;
    if (mode == McsMode::MixedScript)
      morphological = mixed;
    else
    {
      if (rules == nullptr)
        throw ArgumentError("clitic-adjacent MCS detection needs an Arabic rule set");
      morphological = clitic_adjacent(sentence, *rules);
    }
    return morphological ? SentenceCategory::MCS : SentenceCategory::CS;
  }

  std::optional<double> english_percentage(const Sentence& sentence)
  {
    std::size_t letters = 0;
    std::size_t english = 0;
    for (const auto& token : sentence.tokens)
    {
      if (!has_letters(token.script))
        continue;
      ++letters;
      if (token.script == Script::Latin)
        ++english;
    }
    if (letters == 0)
      return std::nullopt;
    return static_cast<double>(english) / static_cast<double>(letters);
  }

  double morphological_richness(std::size_t token_count, std::size_t morph_count)
  {
    if (token_count == 0)
      throw ValidationError("morphological richness of an empty sentence is undefined");
    return static_cast<double>(morph_count) / static_cast<double>(token_count);
  }

  std::size_t subsample_size(std::size_t n, double fraction)
  {
    if (!(fraction > 0.0 && fraction <= 1.0))
      throw ArgumentError("subsample fraction must be in (0, 1], got " + std::to_string(fraction));
    const auto size = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
    return std::min(size, n);
  }

  std::vector<std::size_t> subsample_indices(std::size_t n, double fraction, std::uint64_t seed)
  {
    const auto k = subsample_size(n, fraction);
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    if (k == n)
      return indices;

    std::mt19937_64 engine(seed);
    for (std::size_t i = 0; i < k; ++i)
    {
      const auto j = i + static_cast<std::size_t>(bounded_draw(engine, n - i));
      std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    std::sort(indices.begin(), indices.end());
    return indices;
  }

}
