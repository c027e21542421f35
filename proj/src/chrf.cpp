#include "cswseg/chrf.hpp"

#include <unordered_map>

#include "cswseg/errors.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  ChrfStats& ChrfStats::operator+=(const ChrfStats& other)
  {
    if (orders.size() < other.orders.size())
      orders.resize(other.orders.size(), {0, 0, 0});
    for (std::size_t i = 0; i < other.orders.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k)
        orders[i][k] += other.orders[i][k];
    return *this;
  }

  namespace
  {
    constexpr std::string_view puncts = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

    bool is_punct(char32_t cp)
    {
      return cp < 0x80 && puncts.find(static_cast<char>(cp)) != std::string_view::npos;
    }

    std::vector<std::u32string> split_words(std::u32string_view text)
    {
      std::vector<std::u32string> words;
      std::u32string current;
      for (const auto cp : text)
      {
        if (unicode::is_whitespace(cp))
        {
          if (!current.empty())
            words.push_back(std::move(current));
          current.clear();
        }
        else
          current.push_back(cp);
      }
      if (!current.empty())
        words.push_back(std::move(current));
      return words;
    }

    std::vector<std::u32string> punct_split(std::u32string_view text)
    {
      std::vector<std::u32string> out;
      for (auto& word : split_words(text))
      {
        if (word.size() == 1)
          out.push_back(std::move(word));
        else if (is_punct(word.back()))
        {
          out.push_back(word.substr(0, word.size() - 1));
          out.push_back(word.substr(word.size() - 1));
        }
        else if (is_punct(word.front()))
        {
          out.push_back(word.substr(0, 1));
          out.push_back(word.substr(1));
        }
        else
          out.push_back(std::move(word));
      }
      return out;
    }

    using Counts = std::unordered_map<std::u32string, std::uint64_t>;

    std::vector<Counts> char_ngrams(std::u32string_view text, int max_order)
    {
      std::u32string stripped;
      for (const auto cp : text)
        if (!unicode::is_whitespace(cp))
          stripped.push_back(cp);
      std::vector<Counts> out(static_cast<std::size_t>(max_order));
      for (int n = 1; n <= max_order; ++n)
        for (std::size_t i = 0; i + n <= stripped.size(); ++i)
          ++out[n - 1][stripped.substr(i, n)];
      return out;
    }

    std::vector<Counts> word_ngrams(std::u32string_view text, int max_order)
    {
      const auto words = punct_split(text);
      std::vector<Counts> out(static_cast<std::size_t>(max_order));
      for (int n = 1; n <= max_order; ++n)
        for (std::size_t i = 0; i + n <= words.size(); ++i)
        {
          std::u32string key = words[i];
          for (int k = 1; k < n; ++k)
            key += U' ' + words[i + k];
          ++out[n - 1][key];
        }
      return out;
    }

    std::array<std::uint64_t, 3> match(const Counts& hyp, const Counts& ref)
    {
      std::uint64_t hyp_count = 0, ref_count = 0, matches = 0;
      for (const auto& [gram, count] : hyp)
      {
        hyp_count += count;
        const auto it = ref.find(gram);
        if (it != ref.end())
          matches += std::min(count, it->second);
      }
      for (const auto& [gram, count] : ref)
        ref_count += count;
      return {ref.empty() ? 0 : hyp_count, ref_count, matches};
    }

    void check_params(const ChrfParams& params)
    {
      if (params.char_order < 0 || params.word_order < 0 || params.char_order + params.word_order == 0)
        throw ArgumentError("chrF needs at least one n-gram order");
      if (!(params.beta > 0.0))
        throw ArgumentError("chrF beta must be positive");
    }
  }

  std::vector<std::string> chrf_words(std::string_view sentence)
  {
    std::vector<std::string> out;
    for (const auto& word : punct_split(unicode::decode(sentence)))
      out.push_back(unicode::encode(word));
    return out;
  }

  ChrfStats chrf_sentence_stats(std::string_view hypothesis, std::string_view reference, const ChrfParams& params)
  {
    check_params(params);
    const auto hyp = unicode::decode(hypothesis);
    const auto ref = unicode::decode(reference);
    ChrfStats stats;
    const auto hyp_chars = char_ngrams(hyp, params.char_order);
    const auto ref_chars = char_ngrams(ref, params.char_order);
    for (int n = 0; n < params.char_order; ++n)
      stats.orders.push_back(match(hyp_chars[n], ref_chars[n]));
    const auto hyp_words = word_ngrams(hyp, params.word_order);
    const auto ref_words = word_ngrams(ref, params.word_order);
    for (int n = 0; n < params.word_order; ++n)
      stats.orders.push_back(match(hyp_words[n], ref_words[n]));
    return stats;
  }

  ChrfReport chrf_report(const ChrfStats& stats, const ChrfParams& params)
  {
    check_params(params);
    const std::size_t order_count = static_cast<std::size_t>(params.char_order + params.word_order);
    if (stats.orders.size() != order_count)
      throw ArgumentError("chrF statistics do not match the configured orders");

    constexpr double eps = 1e-16;
    const double factor = params.beta * params.beta;
    ChrfReport report;
    report.params = params;

    double f_sum = 0.0;
    double avg_precision = 0.0, avg_recall = 0.0;
    std::size_t effective = 0;
    for (std::size_t i = 0; i < order_count; ++i)
    {
      const auto [n_hyp, n_ref, n_match] = stats.orders[i];
      ChrfOrder order;
      order.word = i >= static_cast<std::size_t>(params.char_order);
      order.n = order.word ? static_cast<int>(i) - params.char_order + 1 : static_cast<int>(i) + 1;
      order.hyp = n_hyp;
      order.ref = n_ref;
      order.matches = n_match;
      const double precision = n_hyp > 0 ? static_cast<double>(n_match) / static_cast<double>(n_hyp) : eps;
      const double recall = n_ref > 0 ? static_cast<double>(n_match) / static_cast<double>(n_ref) : eps;
      const double denom = factor * precision + recall;
      order.f = denom > 0 ? (1 + factor) * precision * recall / denom : eps;
      order.precision = n_hyp > 0 ? precision : 0.0;
      order.recall = n_ref > 0 ? recall : 0.0;
      if (n_hyp > 0 && n_ref > 0)
      {
        avg_precision += precision;
        avg_recall += recall;
        f_sum += order.f;
        ++effective;
      }
      report.components.push_back(order);
    }

    if (effective == 0)
      report.score = 0.0;
    else if (params.average_f)
      report.score = 100.0 * f_sum / static_cast<double>(effective);
    else
    {
      avg_precision /= static_cast<double>(effective);
      avg_recall /= static_cast<double>(effective);
      const double sum = factor * avg_precision + avg_recall;
      report.score = avg_precision + avg_recall > 0 ? 100.0 * (1 + factor) * avg_precision * avg_recall / sum : 0.0;
    }
    return report;
  }

  double chrf_score(const ChrfStats& stats, const ChrfParams& params)
  {
    return chrf_report(stats, params).score;
  }

  ChrfReport chrf(const std::vector<std::string>& hypotheses, const std::vector<std::string>& references, const ChrfParams& params)
  {
    if (hypotheses.size() != references.size())
      throw AlignmentError("chrF needs as many hypotheses as references: " + std::to_string(hypotheses.size()) + " vs "
                           + std::to_string(references.size()));
    if (hypotheses.empty())
      throw ArgumentError("chrF needs at least one sentence");
    ChrfStats total;
    std::size_t empty_references = 0;
    for (std::size_t i = 0; i < hypotheses.size(); ++i)
    {
      total += chrf_sentence_stats(hypotheses[i], references[i], params);
      if (split_words(unicode::decode(references[i])).empty())
        ++empty_references;
    }
    auto report = chrf_report(total, params);
    report.sentences = hypotheses.size();
    report.empty_references = empty_references;
    return report;
  }

  std::vector<double> chrf_sentences(const std::vector<std::string>& hypotheses,
                                     const std::vector<std::string>& references,
                                     const ChrfParams& params)
  {
    if (hypotheses.size() != references.size())
      throw AlignmentError("chrF needs as many hypotheses as references: " + std::to_string(hypotheses.size()) + " vs "
                           + std::to_string(references.size()));
    std::vector<double> scores;
    scores.reserve(hypotheses.size());
    for (std::size_t i = 0; i < hypotheses.size(); ++i)
      scores.push_back(chrf_score(chrf_sentence_stats(hypotheses[i], references[i], params), params));
    return scores;
  }

}
