#include "cswseg/mdl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cswseg/errors.hpp"
#include "cswseg/random.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::string_view to_string(Dampening dampening)
  {
    switch (dampening)
    {
    case Dampening::Log:
      return "log";
    case Dampening::Ones:
      return "ones";
    case Dampening::None:
      return "none";
    }
    return "unknown";
  }

  std::string_view to_string(MdlAlgorithm algorithm)
  {
    return algorithm == MdlAlgorithm::Recursive ? "recursive" : "viterbi";
  }

  Dampening dampening_from_string(std::string_view name)
  {
    if (name == "log")
      return Dampening::Log;
    if (name == "ones")
      return Dampening::Ones;
    if (name == "none")
      return Dampening::None;
    throw ArgumentError("unknown dampening: " + std::string(name));
  }

  MdlAlgorithm mdl_algorithm_from_string(std::string_view name)
  {
    if (name == "recursive")
      return MdlAlgorithm::Recursive;
    if (name == "viterbi")
      return MdlAlgorithm::Viterbi;
    throw ArgumentError("unknown MDL algorithm: " + std::string(name));
  }

  double dampen(std::uint64_t count, Dampening dampening)
  {
    switch (dampening)
    {
    case Dampening::Log:
      return 1.0 + std::log(static_cast<double>(count));
    case Dampening::Ones:
      return 1.0;
    case Dampening::None:
      return static_cast<double>(count);
    }
    return 1.0;
  }

  namespace
  {
    double xlog2x(double x)
    {
      return x > 0.0 ? x * std::log2(x) : 0.0;
    }

    // Character distribution over the training text plus one end-of-morph
    // symbol per word.
    struct Alphabet
    {
      std::map<std::string, double> costs;
      double end_cost = 0.0;
      double unseen_cost = 0.0;

      static Alphabet from_weights(const std::map<std::string, double>& char_weights, double end_weight)
      {
        double total = end_weight;
        for (const auto& [ch, weight] : char_weights)
          total += weight;
        Alphabet alphabet;
        for (const auto& [ch, weight] : char_weights)
          alphabet.costs.emplace(ch, -std::log2(weight / total));
        alphabet.end_cost = end_weight > 0.0 ? -std::log2(end_weight / total) : 0.0;
        alphabet.unseen_cost = std::log2(total + 1.0);
        return alphabet;
      }

      double lexical_cost(std::string_view morph) const
      {
        double cost = end_cost;
        for (const auto& ch : unicode::split_chars(morph))
        {
          const auto it = costs.find(ch);
          cost += it != costs.end() ? it->second : unseen_cost;
        }
        return cost;
      }
    };

    // Morph weights with the aggregates needed for O(1) cost updates:
    // total = N log2 N - sum(c log2 c) + sum(lexical cost of types).
    class CostState
    {
    public:
      explicit CostState(const Alphabet& alphabet)
        : _alphabet(alphabet)
      {
      }

      void add(const std::string& morph, double weight)
      {
        auto& entry = _morphs[morph];
        if (entry.refs == 0)
        {
          entry.lexical = _alphabet.lexical_cost(morph);
          _lexicon_cost += entry.lexical;
        }
        _sum_xlogx -= xlog2x(entry.weight);
        entry.weight += weight;
        entry.refs += 1;
        _sum_xlogx += xlog2x(entry.weight);
        _mass += weight;
      }

      void remove(const std::string& morph, double weight)
      {
        auto it = _morphs.find(morph);
        auto& entry = it->second;
        _sum_xlogx -= xlog2x(entry.weight);
        entry.refs -= 1;
        _mass -= weight;
        if (entry.refs == 0)
        {
          _lexicon_cost -= entry.lexical;
          _morphs.erase(it);
          return;
        }
        entry.weight -= weight;
        _sum_xlogx += xlog2x(entry.weight);
      }

      void add(const std::vector<std::string>& morphs, double weight)
      {
        for (const auto& morph : morphs)
          add(morph, weight);
      }

      void remove(const std::vector<std::string>& morphs, double weight)
      {
        for (const auto& morph : morphs)
          remove(morph, weight);
      }

      double total() const
      {
        return xlog2x(_mass) - _sum_xlogx + _lexicon_cost;
      }

      bool contains(const std::string& morph) const { return _morphs.count(morph) > 0; }

      // Cost of one more occurrence of `morph` in a Viterbi path.
      double path_cost(const std::string& morph) const
      {
        const auto it = _morphs.find(morph);
        if (it != _morphs.end())
          return std::log2(_mass) - std::log2(it->second.weight);
        return _alphabet.lexical_cost(morph) + std::log2(std::max(_mass, 1.0));
      }

      std::map<std::string, double> weights() const
      {
        std::map<std::string, double> out;
        for (const auto& [morph, entry] : _morphs)
          out.emplace(morph, entry.weight);
        return out;
      }

      std::size_t types() const { return _morphs.size(); }

    private:
      struct Entry
      {
        double weight = 0.0;
        long refs = 0;
        double lexical = 0.0;
      };

      const Alphabet& _alphabet;
      std::map<std::string, Entry> _morphs;
      double _mass = 0.0;
      double _sum_xlogx = 0.0;
      double _lexicon_cost = 0.0;
    };

    struct TrainingWord
    {
      std::string text;
      double weight;
      std::vector<std::string> analysis;
    };

    // Rebuilds the cost state from scratch in a fixed order so that an
    // unchanged segmentation always yields a bit-identical total.
    double exact_total(const std::vector<TrainingWord>& words, const Alphabet& alphabet)
    {
      std::map<std::string, double> weights;
      for (const auto& word : words)
        for (const auto& morph : word.analysis)
          weights[morph] += word.weight;
      double mass = 0.0;
      double sum_xlogx = 0.0;
      double lexicon = 0.0;
      for (const auto& [morph, weight] : weights)
      {
        mass += weight;
        sum_xlogx += xlog2x(weight);
        lexicon += alphabet.lexical_cost(morph);
      }
      return xlog2x(mass) - sum_xlogx + lexicon;
    }

    std::string join_chars(const std::vector<std::string>& chars, std::size_t begin, std::size_t end)
    {
      std::string out;
      for (std::size_t i = begin; i < end; ++i)
        out += chars[i];
      return out;
    }

    // Keeps the segment whole or splits it in two, whichever is cheaper, and
    // recurses into the halves of a chosen split. Adds the result to `state`.
    void resegment_recursive(const std::vector<std::string>& chars,
                             std::size_t begin,
                             std::size_t end,
                             double weight,
                             CostState& state,
                             std::vector<std::string>& out)
    {
      const std::string whole = join_chars(chars, begin, end);
      state.add(whole, weight);
      double best_cost = state.total();
      state.remove(whole, weight);
      std::size_t best_split = 0;

      for (std::size_t split = begin + 1; split < end; ++split)
      {
        const std::string left = join_chars(chars, begin, split);
        const std::string right = join_chars(chars, split, end);
        state.add(left, weight);
        state.add(right, weight);
        const double cost = state.total();
        state.remove(right, weight);
        state.remove(left, weight);
        if (cost < best_cost)
        {
          best_cost = cost;
          best_split = split;
        }
      }

      if (best_split == 0)
      {
        state.add(whole, weight);
        out.push_back(whole);
        return;
      }
      resegment_recursive(chars, begin, best_split, weight, state, out);
      resegment_recursive(chars, best_split, end, weight, state, out);
    }

    template <typename CostFn>
    std::vector<std::string> viterbi(const std::vector<std::string>& chars, CostFn&& cost)
    {
      const std::size_t n = chars.size();
      std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
      std::vector<std::size_t> back(n + 1, 0);
      best[0] = 0.0;
      for (std::size_t end = 1; end <= n; ++end)
      {
        std::string piece;
        // Walk starts right-to-left so `piece` grows by prepending.
        for (std::size_t start = end; start-- > 0;)
        {
          piece.insert(0, chars[start]);
          if (!std::isfinite(best[start]))
            continue;
          const double candidate = best[start] + cost(piece);
          if (candidate < best[end] || (candidate == best[end] && start < back[end]))
          {
            best[end] = candidate;
            back[end] = start;
          }
        }
      }
      std::vector<std::string> morphs;
      for (std::size_t end = n; end > 0; end = back[end])
        morphs.push_back(join_chars(chars, back[end], end));
      std::reverse(morphs.begin(), morphs.end());
      return morphs;
    }

    constexpr double improvement_epsilon = 1e-9;

    void reanalyse(TrainingWord& word, const MdlParams& params, CostState& state)
    {
      const double before = state.total();
      state.remove(word.analysis, word.weight);
      const auto chars = unicode::split_chars(word.text);
      std::vector<std::string> candidate;
      if (params.algorithm == MdlAlgorithm::Recursive)
        resegment_recursive(chars, 0, chars.size(), word.weight, state, candidate);
      else
      {
        candidate = viterbi(chars, [&state](const std::string& piece) { return state.path_cost(piece); });
        state.add(candidate, word.weight);
      }

      if (candidate != word.analysis && state.total() < before - improvement_epsilon)
      {
        word.analysis = std::move(candidate);
        return;
      }
      state.remove(candidate, word.weight);
      state.add(word.analysis, word.weight);
    }

    // Drops the lightest multi-character morph types until the lexicon fits
    // the cap, re-segmenting affected words over the remaining lexicon.
    void prune_lexicon(std::vector<TrainingWord>& words, CostState& state, std::size_t cap)
    {
      while (state.types() > cap)
      {
        const auto weights = state.weights();
        const std::string* victim = nullptr;
        double lightest = std::numeric_limits<double>::infinity();
        for (const auto& [morph, weight] : weights)
        {
          if (unicode::char_count(morph) < 2)
            continue;
          if (weight < lightest)
          {
            lightest = weight;
            victim = &morph;
          }
        }
        if (victim == nullptr)
          return;
        const std::string banned = *victim;
        for (auto& word : words)
        {
          if (std::find(word.analysis.begin(), word.analysis.end(), banned) == word.analysis.end())
            continue;
          state.remove(word.analysis, word.weight);
          const auto chars = unicode::split_chars(word.text);
          word.analysis = viterbi(chars, [&](const std::string& piece) {
            if (piece == banned)
              return std::numeric_limits<double>::infinity();
            if (state.contains(piece) || unicode::char_count(piece) == 1)
              return state.path_cost(piece);
            return std::numeric_limits<double>::infinity();
          });
          state.add(word.analysis, word.weight);
        }
      }
    }
  }

  MdlTrainingResult train_mdl(const WordCounts& word_counts, const MdlParams& params)
  {
    if (word_counts.empty())
      throw ArgumentError("MDL training needs a nonempty word list");
    if (!(params.finish_threshold > 0.0))
      throw ArgumentError("finish threshold must be positive");

    std::vector<TrainingWord> words;
    std::map<std::string, double> char_weights;
    double word_weight = 0.0;
    for (const auto& [text, count] : word_counts)
    {
      if (text.empty() || count == 0)
        continue;
      const double weight = dampen(count, params.dampening);
      words.push_back(TrainingWord{text, weight, {text}});
      for (const auto& ch : unicode::split_chars(text))
        char_weights[ch] += weight;
      word_weight += weight;
    }
    if (words.empty())
      throw ArgumentError("MDL training needs at least one nonempty word with a positive count");

    const Alphabet alphabet = Alphabet::from_weights(char_weights, word_weight);
    CostState state(alphabet);
    for (const auto& word : words)
      state.add(word.analysis, word.weight);

    const double baseline = exact_total(words, alphabet);
    std::vector<double> epoch_costs;
    double previous = baseline;

    std::vector<std::size_t> order(words.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::mt19937_64 engine(params.seed);

    for (std::size_t epoch = 0; epoch < params.max_epochs; ++epoch)
    {
      seeded_shuffle(order, engine);
      for (const auto index : order)
        reanalyse(words[index], params, state);

      const double current = exact_total(words, alphabet);
      epoch_costs.push_back(current);
      const double per_word = (previous - current) / static_cast<double>(words.size());
      previous = current;
      if (per_word < params.finish_threshold)
        break;
    }

    if (params.lexicon_cap > 0)
    {
      prune_lexicon(words, state, params.lexicon_cap);
      epoch_costs.push_back(exact_total(words, alphabet));
    }

    std::map<std::string, double> lexicon;
    std::map<std::string, Analysis> analyses;
    for (const auto& word : words)
    {
      for (const auto& morph : word.analysis)
        lexicon[morph] += word.weight;
      analyses.emplace(word.text, Analysis{word.analysis});
    }

    return MdlTrainingResult{MdlModel(std::move(lexicon), params, word_weight),
                             baseline,
                             std::move(epoch_costs),
                             std::move(analyses)};
  }

  MdlModel::MdlModel(std::map<std::string, double> lexicon, MdlParams params, double word_weight)
    : _lexicon(std::move(lexicon))
    , _params(params)
    , _word_weight(word_weight)
  {
    if (_lexicon.empty())
      throw FormatError("MDL lexicon is empty");
    std::map<std::string, double> char_weights;
    for (const auto& [morph, weight] : _lexicon)
    {
      if (morph.empty() || !(weight > 0.0))
        throw FormatError("MDL lexicon entries need a nonempty morph and a positive weight");
      for (const auto& ch : unicode::split_chars(morph))
        char_weights[ch] += weight;
      _token_mass += weight;
    }
    const Alphabet alphabet = Alphabet::from_weights(char_weights, _word_weight);
    _char_costs = alphabet.costs;
    _end_cost = alphabet.end_cost;
    _unseen_char_cost = alphabet.unseen_cost;
  }

  double MdlModel::char_cost(const std::string& ch) const
  {
    const auto it = _char_costs.find(ch);
    return it != _char_costs.end() ? it->second : _unseen_char_cost;
  }

  double MdlModel::lexical_cost(std::string_view morph) const
  {
    double cost = _end_cost;
    for (const auto& ch : unicode::split_chars(morph))
      cost += char_cost(ch);
    return cost;
  }

  double MdlModel::morph_cost(std::string_view morph) const
  {
    const auto it = _lexicon.find(std::string(morph));
    if (it != _lexicon.end())
      return std::log2(_token_mass) - std::log2(it->second);
    // Out-of-lexicon morphs pay for spelling themselves out plus one token.
    return lexical_cost(morph) + std::log2(_token_mass);
  }

  double MdlModel::total_cost() const
  {
    double sum_xlogx = 0.0;
    double lexicon = 0.0;
    for (const auto& [morph, weight] : _lexicon)
    {
      sum_xlogx += xlog2x(weight);
      lexicon += lexical_cost(morph);
    }
    return xlog2x(_token_mass) - sum_xlogx + lexicon;
  }

  Analysis MdlModel::segment(std::string_view token) const
  {
    if (token.empty())
      throw ArgumentError("cannot segment an empty token");
    const auto chars = unicode::split_chars(token);
    return Analysis{viterbi(chars, [this](const std::string& piece) { return morph_cost(piece); })};
  }

  std::string MdlModel::describe() const
  {
    return "mdl(F=" + std::to_string(_params.finish_threshold) + ", d=" + std::string(to_string(_params.dampening))
      + ", a=" + std::string(to_string(_params.algorithm)) + ", types=" + std::to_string(_lexicon.size()) + ")";
  }

}
