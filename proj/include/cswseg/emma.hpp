#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cswseg/corpus.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  struct PrfScore
  {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t matches = 0;
    std::uint64_t predicted = 0;  // predicted morph tokens
    std::uint64_t gold = 0;       // gold morph tokens
    std::size_t words = 0;
  };

  using MorphMatching = std::vector<std::pair<std::string, std::string>>;

  struct EmmaReport
  {
    PrfScore all;
    // Only languages that occur in the word list are present.
    std::map<Language, PrfScore> by_language;
    // (predicted type, gold type) pairs of the corpus-level matching.
    MorphMatching matching;

    PrfScore language(Language language) const;
  };

  // Maximum-weight one-to-one assignment of predicted to gold morph types,
  // weight(p, g) = sum over words of min(count of p in pred, count of g in gold).
  // Returns the matched weight and fills `matching` if given.
  std::uint64_t emma_matching(const std::vector<Analysis>& pred,
                              const std::vector<Analysis>& gold,
                              MorphMatching* matching = nullptr);

  PrfScore emma_score(const std::vector<Analysis>& pred, const std::vector<Analysis>& gold);

  // Throws AlignmentError when the three lists differ in length.
  EmmaReport emma(const std::vector<Analysis>& pred,
                  const std::vector<Analysis>& gold,
                  const std::vector<Language>& languages);

}
