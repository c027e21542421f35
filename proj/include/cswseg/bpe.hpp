#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cswseg/segmenter.hpp"

namespace cswseg
{

  // Word type -> corpus frequency. Ordered so every consumer iterates the
  // same way.
  using WordCounts = std::map<std::string, std::uint64_t>;

  struct BpeMerge
  {
    std::string left;
    std::string right;

    bool operator==(const BpeMerge&) const = default;
    auto operator<=>(const BpeMerge&) const = default;
  };

  class BpeModel : public Segmenter
  {
  public:
    static constexpr std::string_view default_marker = "</w>";
    static constexpr std::size_t default_vocab_size = 8000;

    BpeModel(std::vector<BpeMerge> merges, std::size_t vocab_size, std::string marker = std::string(default_marker));

    // Greedy most-frequent-pair merging. Stops when the symbol vocabulary
    // (alphabet, end marker and merged symbols) reaches vocab_size or no pair
    // occurs at least twice. Ties go to the lexicographically smallest
    // (left, right) pair.
    static BpeModel train(const WordCounts& word_counts,
                          std::size_t vocab_size = default_vocab_size,
                          std::string marker = std::string(default_marker));

    Analysis segment(std::string_view token) const override;
    std::string describe() const override;

    // Symbol sequence before the end marker is stripped.
    std::vector<std::string> encode(std::string_view token) const;

    const std::vector<BpeMerge>& merges() const { return _merges; }
    std::size_t vocab_size() const { return _vocab_size; }
    const std::string& marker() const { return _marker; }

  private:
    struct PairHash
    {
      std::size_t operator()(const std::pair<std::string, std::string>& p) const noexcept;
    };

    std::vector<BpeMerge> _merges;
    std::size_t _vocab_size;
    std::string _marker;
    std::unordered_map<std::pair<std::string, std::string>, std::size_t, PairHash> _ranks;
  };

}
