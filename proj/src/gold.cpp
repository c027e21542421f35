#include "cswseg/gold.hpp"

#include <set>
#include <sstream>

#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  namespace
  {
    struct GoldHeader
    {
      char delim = '#';
      bool word_first = true;
      bool normalize_arabic = false;
    };

    std::string where(const std::string& source, std::size_t line_no)
    {
      return source + ":" + std::to_string(line_no) + ": ";
    }

    void apply_header(std::string_view line, GoldHeader& header, const std::string& location)
    {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        return;  // plain comment
      const auto key = line.substr(1, eq - 1);
      const auto value = line.substr(eq + 1);
      if (key == "delim")
      {
        if (value.size() != 1 || value == "\t")
          throw FormatError(location + "delimiter must be a single non-tab character");
        header.delim = value[0];
      }
      else if (key == "columns")
      {
        if (value == "word,segmentation")
          header.word_first = true;
        else if (value == "segmentation,word")
          header.word_first = false;
        else
          throw FormatError(location + "unknown column order '" + std::string(value) + "'");
      }
      else if (key == "normalize")
      {
        if (value == "none")
          header.normalize_arabic = false;
        else if (value == "arabic")
          header.normalize_arabic = true;
        else
          throw FormatError(location + "unknown normalization '" + std::string(value) + "'");
      }
      else
        throw FormatError(location + "unknown header key '" + std::string(key) + "'");
    }
  }

  std::vector<GoldSentence> parse_gold(std::string_view content, const std::string& source)
  {
    std::vector<GoldSentence> sentences;
    GoldHeader header;
    GoldSentence current;
    bool seen_entry = false;

    const auto flush = [&] {
      if (current.entries.empty())
        return;
      current.sentence.id = sentences.size();
      sentences.push_back(std::move(current));
      current = GoldSentence{};
    };

    const auto lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
      const std::size_t line_no = i + 1;
      const auto location = where(source, line_no);
      const std::string& line = lines[i];
      unicode::decode(line, line_no);

      if (unicode::trim(line).empty())
      {
        flush();
        continue;
      }
      if (line[0] == '#')
      {
        if (seen_entry)
          throw FormatError(location + "header line after the first entry (escape '#' as '\\#')");
        apply_header(line, header, location);
        continue;
      }
      seen_entry = true;

      const auto columns = text::split(line, '\t');
      if (columns.size() < 2 || columns[0].empty() || columns[1].empty())
        throw FormatError(location + "expected two tab-separated columns");
      const auto& word_column = header.word_first ? columns[0] : columns[1];
      const auto& seg_column = header.word_first ? columns[1] : columns[0];

      auto word = unicode::nfc(text::unescape(word_column));
      Analysis analysis{text::split_unescaped(unicode::nfc(seg_column), header.delim)};
      for (const auto& morph : analysis.morphs)
        if (morph.empty())
          throw ValidationError(location + "empty morph in '" + seg_column + "'");

      auto expected = word;
      auto joined = analysis.surface();
      if (header.normalize_arabic)
      {
        expected = normalize_arabic_letters(expected);
        joined = normalize_arabic_letters(joined);
      }
      if (joined != expected)
        throw ValidationError(location + "morphs '" + seg_column + "' do not concatenate to '" + word + "'");

      auto token = Token::make(std::move(word));
      current.sentence.tokens.push_back(token);
      current.entries.push_back(GoldEntry{std::move(token), std::move(analysis)});
    }
    flush();
    return sentences;
  }

  std::vector<GoldSentence> load_gold(const std::filesystem::path& path)
  {
    return parse_gold(text::read_file(path), path.string());
  }

  std::vector<GoldEntry> flatten(const std::vector<GoldSentence>& gold)
  {
    std::vector<GoldEntry> entries;
    for (const auto& sentence : gold)
      entries.insert(entries.end(), sentence.entries.begin(), sentence.entries.end());
    return entries;
  }

  double LanguageStats::segmented_ratio() const
  {
    return total_words == 0 ? 0.0 : static_cast<double>(segmented_words) / static_cast<double>(total_words);
  }

  double LanguageStats::morphs_per_word() const
  {
    return total_words == 0 ? 0.0 : static_cast<double>(total_morphs) / static_cast<double>(total_words);
  }

  CorpusStats corpus_stats(const std::vector<GoldEntry>& gold)
  {
    if (gold.empty())
      throw ValidationError("corpus statistics need at least one gold entry");

    CorpusStats stats;
    std::map<Language, std::set<std::string>> unique;
    std::set<std::string> unique_overall;

    const auto add = [](LanguageStats& s, const Analysis& analysis) {
      ++s.total_words;
      s.total_morphs += analysis.size();
      if (analysis.size() >= 2)
        ++s.segmented_words;
      s.max_morphs = std::max(s.max_morphs, analysis.size());
    };

    for (const auto& entry : gold)
    {
      const auto language = language_of(entry.word.script);
      add(stats.by_language[language], entry.analysis);
      add(stats.overall, entry.analysis);
      for (const auto& morph : entry.analysis.morphs)
      {
        unique[language].insert(morph);
        unique_overall.insert(morph);
      }
    }
    for (auto& [language, s] : stats.by_language)
      s.unique_morphs = unique[language].size();
    stats.overall.unique_morphs = unique_overall.size();
    return stats;
  }

  std::string format_stats(const CorpusStats& stats)
  {
    std::ostringstream out;
    out << "language\twords\tsegmented_words\tsegmented_pct\tmorphs\tunique_morphs\tmorphs_per_word\tmax_morphs\n";
    const auto row = [&out](std::string_view name, const LanguageStats& s) {
      out << name << '\t' << s.total_words << '\t' << s.segmented_words << '\t'
          << text::format_fixed(100.0 * s.segmented_ratio(), 1) << '\t' << s.total_morphs << '\t'
          << s.unique_morphs << '\t' << text::format_fixed(s.morphs_per_word(), 3) << '\t'
          << s.max_morphs << '\n';
    };
    for (const auto language : {Language::EGY, Language::EN, Language::Other})
    {
      const auto it = stats.by_language.find(language);
      if (it != stats.by_language.end())
        row(to_string(language), it->second);
    }
    row("All", stats.overall);
    return out.str();
  }

}
