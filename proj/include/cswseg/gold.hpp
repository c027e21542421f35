#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cswseg/corpus.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  struct GoldEntry
  {
    Token word;
    Analysis analysis;
  };

  struct GoldSentence
  {
    Sentence sentence;
    std::vector<GoldEntry> entries;
  };

  // Gold TSV: `word<TAB>morph#morph...` per line, blank line between
  // sentences. Optional header lines before the first entry:
  //   #delim=<char>            morph delimiter (default '#')
  //   #columns=word,segmentation | segmentation,word
  //   #normalize=none|arabic   normalization applied before the concatenation check
  std::vector<GoldSentence> parse_gold(std::string_view content, const std::string& source = "<memory>");
  std::vector<GoldSentence> load_gold(const std::filesystem::path& path);

  std::vector<GoldEntry> flatten(const std::vector<GoldSentence>& gold);

  struct LanguageStats
  {
    std::size_t total_words = 0;
    std::size_t segmented_words = 0;
    std::size_t total_morphs = 0;
    std::size_t unique_morphs = 0;
    std::size_t max_morphs = 0;

    double segmented_ratio() const;
    double morphs_per_word() const;
  };

  struct CorpusStats
  {
    std::map<Language, LanguageStats> by_language;
    LanguageStats overall;
  };

  CorpusStats corpus_stats(const std::vector<GoldEntry>& gold);

  // Tab-separated table, ratios to three decimals.
  std::string format_stats(const CorpusStats& stats);

}
