#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cswseg
{

  struct ChrfParams
  {
    int char_order = 6;
    int word_order = 2;
    double beta = 2.0;
    // Average per-order F scores instead of averaging precision and recall
    // before a single F computation (the reference scorer's default).
    bool average_f = false;
  };

  // Per order: [hypothesis n-grams, reference n-grams, clipped matches].
  // The hypothesis count is zeroed when the reference has no n-grams of
  // that order. Character orders come first, then word orders.
  struct ChrfStats
  {
    std::vector<std::array<std::uint64_t, 3>> orders;

    ChrfStats& operator+=(const ChrfStats& other);
  };

  struct ChrfOrder
  {
    bool word = false;
    int n = 0;
    std::uint64_t hyp = 0;
    std::uint64_t ref = 0;
    std::uint64_t matches = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
  };

  struct ChrfReport
  {
    double score = 0.0;
    ChrfParams params;
    std::vector<ChrfOrder> components;
    std::size_t sentences = 0;
    // Sentences whose reference is empty (scored with the skip convention).
    std::size_t empty_references = 0;
  };

  ChrfStats chrf_sentence_stats(std::string_view hypothesis, std::string_view reference, const ChrfParams& params = {});
  double chrf_score(const ChrfStats& stats, const ChrfParams& params = {});
  ChrfReport chrf_report(const ChrfStats& stats, const ChrfParams& params = {});

  // Corpus-level chrF2++. Throws AlignmentError on length mismatch and
  // ArgumentError on empty input.
  ChrfReport chrf(const std::vector<std::string>& hypotheses,
                  const std::vector<std::string>& references,
                  const ChrfParams& params = {});

  // One score per sentence, each from that sentence's statistics alone.
  std::vector<double> chrf_sentences(const std::vector<std::string>& hypotheses,
                                     const std::vector<std::string>& references,
                                     const ChrfParams& params = {});

  // Words for the word n-grams: whitespace split, then one leading or
  // trailing ASCII punctuation character split off words longer than one
  // character.
  std::vector<std::string> chrf_words(std::string_view sentence);

}
