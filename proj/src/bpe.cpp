#include "cswseg/bpe.hpp"

#include <limits>
#include <set>
#include <unordered_set>

#include "cswseg/errors.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::size_t BpeModel::PairHash::operator()(const std::pair<std::string, std::string>& p) const noexcept
  {
    const std::size_t h1 = std::hash<std::string>{}(p.first);
    const std::size_t h2 = std::hash<std::string>{}(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }

  BpeModel::BpeModel(std::vector<BpeMerge> merges, std::size_t vocab_size, std::string marker)
    : _merges(std::move(merges))
    , _vocab_size(vocab_size)
    , _marker(std::move(marker))
  {
    if (_marker.empty())
      throw ArgumentError("BPE end marker must not be empty");
    for (std::size_t rank = 0; rank < _merges.size(); ++rank)
    {
      const auto& merge = _merges[rank];
      if (merge.left.empty() || merge.right.empty())
        throw FormatError("BPE merge " + std::to_string(rank) + " has an empty side");
      if (!_ranks.emplace(std::make_pair(merge.left, merge.right), rank).second)
        throw FormatError("duplicate BPE merge: " + merge.left + " " + merge.right);
    }
  }

  namespace
  {
    using SymbolId = std::uint32_t;
    using PairKey = std::uint64_t;

    PairKey make_key(SymbolId left, SymbolId right)
    {
      return (static_cast<PairKey>(left) << 32) | right;
    }

    class SymbolTable
    {
    public:
      SymbolId intern(const std::string& symbol)
      {
        const auto [it, inserted] = _ids.emplace(symbol, static_cast<SymbolId>(_symbols.size()));
        if (inserted)
          _symbols.push_back(symbol);
        return it->second;
      }

      const std::string& operator[](SymbolId id) const { return _symbols[id]; }
      std::size_t size() const { return _symbols.size(); }

    private:
      std::unordered_map<std::string, SymbolId> _ids;
      std::vector<std::string> _symbols;
    };

    struct WordType
    {
      std::vector<SymbolId> symbols;
      std::uint64_t count;
    };

    // Candidate ordering: higher count first, then lexicographically smallest pair.
    struct Candidate
    {
      std::uint64_t count;
      std::string left;
      std::string right;
      PairKey key;

      bool operator<(const Candidate& other) const
      {
        if (count != other.count)
          return count > other.count;
        if (left != other.left)
          return left < other.left;
        return right < other.right;
      }
    };

    class PairStatistics
    {
    public:
      explicit PairStatistics(const SymbolTable& symbols)
        : _symbols(symbols)
      {
      }

      void add(PairKey key, std::uint64_t delta, std::size_t word)
      {
        auto& count = _counts[key];
        if (count > 0 && !_banned.count(key))
          _queue.erase(candidate(key, count));
        count += delta;
        _where[key].insert(word);
        if (!_banned.count(key))
          _queue.insert(candidate(key, count));
      }

      void remove(PairKey key, std::uint64_t delta)
      {
        auto it = _counts.find(key);
        if (!_banned.count(key))
          _queue.erase(candidate(key, it->second));
        it->second -= delta;
        if (it->second == 0)
          _counts.erase(it);
        else if (!_banned.count(key))
          _queue.insert(candidate(key, it->second));
      }

      void ban(PairKey key)
      {
        const auto it = _counts.find(key);
        if (it != _counts.end())
          _queue.erase(candidate(key, it->second));
        _banned.insert(key);
      }

      const Candidate* best() const { return _queue.empty() ? nullptr : &*_queue.begin(); }

      // Words that contained the pair at some point; may be a superset.
      std::vector<std::size_t> take_words(PairKey key)
      {
        std::vector<std::size_t> words;
        const auto it = _where.find(key);
        if (it == _where.end())
          return words;
        words.assign(it->second.begin(), it->second.end());
        _where.erase(it);
        std::sort(words.begin(), words.end());
        return words;
      }

    private:
      Candidate candidate(PairKey key, std::uint64_t count) const
      {
        return Candidate{count,
                         _symbols[static_cast<SymbolId>(key >> 32)],
                         _symbols[static_cast<SymbolId>(key & 0xFFFFFFFFu)],
                         key};
      }

      const SymbolTable& _symbols;
      std::unordered_map<PairKey, std::uint64_t> _counts;
      std::unordered_map<PairKey, std::unordered_set<std::size_t>> _where;
      std::unordered_set<PairKey> _banned;
      std::set<Candidate> _queue;
    };

    void count_pairs(const WordType& word, std::size_t index, PairStatistics& stats)
    {
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i)
        stats.add(make_key(word.symbols[i], word.symbols[i + 1]), word.count, index);
    }

    void uncount_pairs(const WordType& word, PairStatistics& stats)
    {
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i)
        stats.remove(make_key(word.symbols[i], word.symbols[i + 1]), word.count);
    }

    // Merges non-overlapping occurrences left to right; returns whether anything changed.
    template <typename Symbol>
    bool merge_in_place(std::vector<Symbol>& symbols, const Symbol& left, const Symbol& right, const Symbol& merged)
    {
      bool changed = false;
      std::size_t out = 0;
      for (std::size_t i = 0; i < symbols.size();)
      {
        if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right)
        {
          symbols[out++] = merged;
          i += 2;
          changed = true;
        }
        else
          symbols[out++] = symbols[i++];
      }
      symbols.resize(out);
      return changed;
    }
  }

  BpeModel BpeModel::train(const WordCounts& word_counts, std::size_t vocab_size, std::string marker)
  {
    if (word_counts.empty())
      throw ArgumentError("BPE training needs a nonempty frequency map");
    if (marker.empty())
      throw ArgumentError("BPE end marker must not be empty");

    SymbolTable symbols;
    std::set<std::string> vocabulary;
    std::vector<WordType> words;
    words.reserve(word_counts.size());
    const SymbolId marker_id = symbols.intern(marker);
    vocabulary.insert(marker);
    for (const auto& [word, count] : word_counts)
    {
      if (word.empty() || count == 0)
        continue;
      WordType type{{}, count};
      for (const auto& ch : unicode::split_chars(word))
      {
        type.symbols.push_back(symbols.intern(ch));
        vocabulary.insert(ch);
      }
      type.symbols.push_back(marker_id);
      words.push_back(std::move(type));
    }
    if (words.empty())
      throw ArgumentError("BPE training needs at least one nonempty word with a positive count");
    if (vocab_size < vocabulary.size())
      throw ArgumentError("vocabulary size " + std::to_string(vocab_size)
                          + " is below the alphabet size " + std::to_string(vocabulary.size()));

    PairStatistics stats(symbols);
    for (std::size_t i = 0; i < words.size(); ++i)
      count_pairs(words[i], i, stats);

    std::vector<BpeMerge> merges;
    while (vocabulary.size() < vocab_size)
    {
      const Candidate* best = stats.best();
      if (best == nullptr || best->count < 2)
        break;
      const PairKey key = best->key;
      const auto left = static_cast<SymbolId>(key >> 32);
      const auto right = static_cast<SymbolId>(key & 0xFFFFFFFFu);
      const std::string merged_text = symbols[left] + symbols[right];
      merges.push_back(BpeMerge{symbols[left], symbols[right]});
      vocabulary.insert(merged_text);
      const SymbolId merged = symbols.intern(merged_text);

      for (const auto index : stats.take_words(key))
      {
        auto& word = words[index];
        auto updated = word.symbols;
        if (!merge_in_place(updated, left, right, merged))
          continue;
        uncount_pairs(word, stats);
        word.symbols = std::move(updated);
        count_pairs(word, index, stats);
      }
      // A pair is merged at most once even if it reappears later.
      stats.ban(key);
    }

    return BpeModel(std::move(merges), vocabulary.size(), std::move(marker));
  }

  std::vector<std::string> BpeModel::encode(std::string_view token) const
  {
    std::vector<std::string> symbols = unicode::split_chars(token);
    symbols.push_back(_marker);

    // Replays merges in recorded order: at each step take the lowest-ranked
    // pair whose rank has not been passed yet.
    std::size_t cursor = 0;
    while (symbols.size() > 1)
    {
      std::size_t best_rank = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
      {
        const auto it = _ranks.find(std::make_pair(symbols[i], symbols[i + 1]));
        if (it != _ranks.end() && it->second >= cursor && it->second < best_rank)
          best_rank = it->second;
      }
      if (best_rank == std::numeric_limits<std::size_t>::max())
        break;
      const auto& merge = _merges[best_rank];
      merge_in_place(symbols, merge.left, merge.right, merge.left + merge.right);
      cursor = best_rank + 1;
    }
    return symbols;
  }

  Analysis BpeModel::segment(std::string_view token) const
  {
    if (token.empty())
      throw ArgumentError("cannot segment an empty token");
    auto symbols = encode(token);
    auto& last = symbols.back();
    last.erase(last.size() - _marker.size());
    if (last.empty())
      symbols.pop_back();
    return Analysis{std::move(symbols)};
  }

  std::string BpeModel::describe() const
  {
    return "bpe(vocab=" + std::to_string(_vocab_size) + ", merges=" + std::to_string(_merges.size()) + ")";
  }

}
