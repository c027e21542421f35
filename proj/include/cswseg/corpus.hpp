#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cswseg/errors.hpp"

namespace cswseg
{

  enum class Script
  {
    Arabic,
    Latin,
    Numeric,
    Punct,
    Mixed,
  };

  // Language bucket used by every per-language report. Mixed-script words
  // belong to the matrix language (EGY).
  enum class Language
  {
    EGY,
    EN,
    Other,
  };

  std::string_view to_string(Script script);
  std::string_view to_string(Language language);
  Script script_from_string(std::string_view name);

  Script classify_script(std::string_view token);
  Language language_of(Script script);
  inline bool has_letters(Script script)
  {
    return script == Script::Arabic || script == Script::Latin || script == Script::Mixed;
  }

  struct Token
  {
    std::string surface;  // unescaped, NFC
    Script script;

    static Token make(std::string surface);
  };

  struct Sentence
  {
    std::size_t id = 0;
    std::vector<Token> tokens;
  };

  struct PreprocessOptions
  {
    // Applied in order before URL/emoticon removal.
    std::vector<std::string> markup_patterns = {R"(<[^<>]*>)"};
    bool remove_urls = true;
    bool remove_emoticons = true;
    bool split_digits = true;
    bool split_punctuation = true;
    // ى -> ي and أ -> ا
    bool normalize_arabic = true;
  };

  class Preprocessor
  {
  public:
    explicit Preprocessor(PreprocessOptions options = {});

    // Returns nullopt when nothing is left after cleaning.
    // Throws DecodeError citing line_no on invalid UTF-8.
    std::optional<Sentence> operator()(std::string_view line, std::size_t line_no = 0) const;

    const PreprocessOptions& options() const { return _options; }

  private:
    PreprocessOptions _options;
    std::vector<std::regex> _markup;
  };

  // Renders tokens space-separated with reserved characters escaped.
  std::string render(const Sentence& sentence);
  // Parses an already preprocessed (escaped, space-separated) line.
  Sentence parse_sentence(std::string_view line, std::size_t id = 0);

  std::string normalize_arabic_letters(std::string_view text);

  enum class SentenceCategory
  {
    MonoEGY,
    MonoEN,
    CS,
    MCS,
    Undetermined,
  };

  std::string_view to_string(SentenceCategory category);
  SentenceCategory category_from_string(std::string_view name);
  inline bool is_code_switched(SentenceCategory category)
  {
    return category == SentenceCategory::CS || category == SentenceCategory::MCS;
  }

  enum class McsMode
  {
    MixedScript,
    CliticAdjacent,
  };

  std::string_view to_string(McsMode mode);
  McsMode mcs_mode_from_string(std::string_view name);

  class ArabicRules;

  // `rules` supplies the clitic inventory for McsMode::CliticAdjacent and may
  // be null otherwise.
  SentenceCategory categorize(const Sentence& sentence,
                              McsMode mode = McsMode::MixedScript,
                              const ArabicRules* rules = nullptr);

  std::optional<double> english_percentage(const Sentence& sentence);

  double morphological_richness(std::size_t token_count, std::size_t morph_count);

  // round-half-up of fraction * n
  std::size_t subsample_size(std::size_t n, double fraction);

  // Sorted indices of a seeded sample without replacement. Uses its own
  // bounded draw over mt19937_64 so the result is identical across standard
  // library implementations.
  std::vector<std::size_t> subsample_indices(std::size_t n, double fraction, std::uint64_t seed);

  template <typename T>
  std::vector<T> subsample(const std::vector<T>& items, double fraction, std::uint64_t seed)
  {
    std::vector<T> out;
    for (const auto index : subsample_indices(items.size(), fraction, seed))
      out.push_back(items[index]);
    return out;
  }

}
