#pragma once

// Brute-force reference implementations used to check the optimized code.
// They follow the written definitions directly and are only meant for tiny
// inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cswseg/unicode.hpp"

namespace oracle
{

  using Morphs = std::vector<std::string>;

  // Every segmentation of `word` (2^(n-1) of them), character based.
  inline std::vector<Morphs> all_segmentations(const std::string& word)
  {
    const auto chars = cswseg::unicode::split_chars(word);
    const std::size_t n = chars.size();
    std::vector<Morphs> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask)
    {
      Morphs morphs(1);
      for (std::size_t i = 0; i < n; ++i)
      {
        morphs.back() += chars[i];
        if (i + 1 < n && (mask >> i) & 1)
          morphs.emplace_back();
      }
      out.push_back(std::move(morphs));
    }
    return out;
  }

  // EMMA by enumerating every one-to-one partial mapping of predicted types
  // onto gold types. Returns the best total weight.
  inline std::uint64_t emma_matches(const std::vector<Morphs>& pred, const std::vector<Morphs>& gold)
  {
    std::set<std::string> p_types, g_types;
    for (const auto& a : pred)
      p_types.insert(a.begin(), a.end());
    for (const auto& a : gold)
      g_types.insert(a.begin(), a.end());
    const std::vector<std::string> ps(p_types.begin(), p_types.end());
    const std::vector<std::string> gs(g_types.begin(), g_types.end());

    std::vector<std::vector<std::uint64_t>> weight(ps.size(), std::vector<std::uint64_t>(gs.size(), 0));
    for (std::size_t w = 0; w < pred.size(); ++w)
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < gs.size(); ++j)
        {
          const auto pc = static_cast<std::uint64_t>(std::count(pred[w].begin(), pred[w].end(), ps[i]));
          const auto gc = static_cast<std::uint64_t>(std::count(gold[w].begin(), gold[w].end(), gs[j]));
          weight[i][j] += std::min(pc, gc);
        }

    std::vector<bool> used(gs.size(), false);
    std::function<std::uint64_t(std::size_t)> best = [&](std::size_t i) -> std::uint64_t {
      if (i == ps.size())
        return 0;
      std::uint64_t result = best(i + 1);  // leave ps[i] unmatched
      for (std::size_t j = 0; j < gs.size(); ++j)
        if (!used[j])
        {
          used[j] = true;
          result = std::max(result, weight[i][j] + best(i + 1));
          used[j] = false;
        }
      return result;
    };
    return best(0);
  }

  // Two-part MDL code length of a full corpus segmentation.
  //   corpus  = N log2 N - sum_m c_m log2 c_m   (c_m: weighted morph counts)
  //   lexicon = sum over morph types of sum_chars -log2 p(ch) - log2 p(end)
  // with p over characters of the weighted training words plus one end
  // symbol per word.
  inline double mdl_cost(const std::map<std::string, double>& word_weights, const std::map<std::string, Morphs>& analyses)
  {
    std::map<std::string, double> char_weight;
    double end_weight = 0.0;
    for (const auto& [word, w] : word_weights)
    {
      for (const auto& ch : cswseg::unicode::split_chars(word))
        char_weight[ch] += w;
      end_weight += w;
    }
    double alphabet_total = end_weight;
    for (const auto& [ch, w] : char_weight)
      alphabet_total += w;

    std::map<std::string, double> morph_weight;
    for (const auto& [word, morphs] : analyses)
      for (const auto& m : morphs)
        morph_weight[m] += word_weights.at(word);

    double n = 0.0, sum = 0.0, lexicon = 0.0;
    for (const auto& [m, c] : morph_weight)
    {
      n += c;
      sum += c * std::log2(c);
      double spell = -std::log2(end_weight / alphabet_total);
      for (const auto& ch : cswseg::unicode::split_chars(m))
        spell += -std::log2(char_weight.at(ch) / alphabet_total);
      lexicon += spell;
    }
    return n * std::log2(n) - sum + lexicon;
  }

  struct MdlOptimum
  {
    double cost = std::numeric_limits<double>::infinity();
    std::map<std::string, Morphs> analyses;
  };

  // Global minimum of mdl_cost over the joint choice of segmentations.
  inline MdlOptimum mdl_exhaustive(const std::map<std::string, double>& word_weights)
  {
    std::vector<std::string> words;
    std::vector<std::vector<Morphs>> options;
    for (const auto& [word, w] : word_weights)
    {
      words.push_back(word);
      options.push_back(all_segmentations(word));
    }
    MdlOptimum best;
    std::map<std::string, Morphs> current;
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
      if (k == words.size())
      {
        const double cost = mdl_cost(word_weights, current);
        if (cost < best.cost)
        {
          best.cost = cost;
          best.analyses = current;
        }
        return;
      }
      for (const auto& option : options[k])
      {
        current[words[k]] = option;
        walk(k + 1);
      }
    };
    walk(0);
    return best;
  }

  // Cost of segmenting one token with a fixed lexicon: a known morph costs
  // -log2(c_m / N); an unknown morph spells itself out and pays log2 N.
  // Characters never seen in the lexicon cost log2(alphabet total + 1).
  inline double mdl_decode_cost(const std::map<std::string, double>& lexicon, double word_weight, const Morphs& morphs)
  {
    std::map<std::string, double> char_weight;
    double mass = 0.0;
    for (const auto& [m, c] : lexicon)
    {
      mass += c;
      for (const auto& ch : cswseg::unicode::split_chars(m))
        char_weight[ch] += c;
    }
    double total = word_weight;
    for (const auto& [ch, w] : char_weight)
      total += w;

    double cost = 0.0;
    for (const auto& m : morphs)
    {
      const auto it = lexicon.find(m);
      if (it != lexicon.end())
      {
        cost += std::log2(mass) - std::log2(it->second);
        continue;
      }
      double spell = -std::log2(word_weight / total);
      for (const auto& ch : cswseg::unicode::split_chars(m))
      {
        const auto cw = char_weight.find(ch);
        spell += cw != char_weight.end() ? -std::log2(cw->second / total) : std::log2(total + 1.0);
      }
      cost += spell + std::log2(mass);
    }
    return cost;
  }

  // chrF2++ of hypothesis "abc" against reference "abd", enumerated by hand:
  //   char 1-grams  {a,b,c} vs {a,b,d}   P = R = 2/3
  //   char 2-grams  {ab,bc} vs {ab,bd}   P = R = 1/2
  //   char 3-grams  {abc}   vs {abd}     P = R = 0
  //   char 4..6     none on either side  (skipped)
  //   word 1-grams  {abc}   vs {abd}     P = R = 0
  //   word 2-grams  none                 (skipped)
  // Mean P = mean R = (2/3 + 1/2) / 4 = 7/24, and F2 of P = R is P itself.
  inline constexpr double chrf_abc_abd = 100.0 * 7.0 / 24.0;

}
