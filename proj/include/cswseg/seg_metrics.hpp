#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cswseg/corpus.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  // 100 * |eval morph tokens outside train_vocab| / |eval morph tokens|.
  // Throws ValidationError when there are no eval morphs.
  double oov_rate(const std::set<std::string>& train_vocab, const std::vector<std::string>& eval_morphs);

  struct DiagnosticCounts
  {
    std::size_t under = 0;
    std::size_t over = 0;
    std::size_t correct = 0;
    std::size_t correct_seg = 0;    // correct count, gold has >1 morph
    std::size_t correct_unseg = 0;  // correct count, gold has one morph

    std::size_t total() const { return under + over + correct; }
    DiagnosticCounts& operator+=(const DiagnosticCounts& other);
  };

  struct SegDiagnostics
  {
    DiagnosticCounts all;
    std::map<Language, DiagnosticCounts> by_language;
  };

  // Compares morph counts per word. Throws AlignmentError on length mismatch.
  SegDiagnostics seg_diagnostics(const std::vector<Analysis>& pred,
                                 const std::vector<Analysis>& gold,
                                 const std::vector<Language>& languages);

}
