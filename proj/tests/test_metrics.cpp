#include <doctest.h>

#include <random>

#include "cswseg/chrf.hpp"
#include "cswseg/emma.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/seg_metrics.hpp"
#include "oracles.hpp"

using namespace cswseg;

namespace
{
  std::vector<Analysis> analyses(std::initializer_list<std::vector<std::string>> words)
  {
    std::vector<Analysis> out;
    for (const auto& w : words)
      out.push_back(Analysis{w});
    return out;
  }

  std::vector<std::vector<std::string>> morphs_of(const std::vector<Analysis>& list)
  {
    std::vector<std::vector<std::string>> out;
    for (const auto& a : list)
      out.push_back(a.morphs);
    return out;
  }

  // Random aligned (pred, gold) lists over small morph alphabets.
  std::pair<std::vector<Analysis>, std::vector<Analysis>> random_instance(std::mt19937_64& rng)
  {
    const std::vector<std::string> p_types = {"a", "b", "c", "d", "e", "f"};
    const std::vector<std::string> g_types = {"a", "b", "x", "y", "ab", "c"};
    const auto p_used = 1 + rng() % 6;
    const auto g_used = 1 + rng() % 6;
    const auto words = 1 + rng() % 6;
    std::vector<Analysis> pred, gold;
    for (std::size_t w = 0; w < words; ++w)
    {
      Analysis p, g;
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k)
        p.morphs.push_back(p_types[rng() % p_used]);
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k)
        g.morphs.push_back(g_types[rng() % g_used]);
      pred.push_back(p);
      gold.push_back(g);
    }
    return {pred, gold};
  }
}

TEST_CASE("emma toy")
{
  // pred keeps "cars" whole, gold splits it: one of three gold morphs matched
  // through car<->cars, plus "went" exactly.
  const auto pred = analyses({{"cars"}, {"went"}});
  const auto gold = analyses({{"car", "s"}, {"went"}});
  const auto score = emma_score(pred, gold);
  CHECK(score.matches == 2);
  CHECK(score.precision == doctest::Approx(1.0));
  CHECK(score.recall == doctest::Approx(2.0 / 3.0));
  CHECK(score.f1 == doctest::Approx(0.8));

  const auto same = emma_score(gold, gold);
  CHECK(same.f1 == doctest::Approx(1.0));
}

TEST_CASE("emma matching is one-to-one")
{
  const auto pred = analyses({{"a", "b"}, {"a"}, {"c", "b"}});
  const auto gold = analyses({{"x", "y"}, {"x"}, {"x", "y"}});
  MorphMatching matching;
  const auto weight = emma_matching(pred, gold, &matching);
  CHECK(weight == oracle::emma_matches(morphs_of(pred), morphs_of(gold)));
  std::set<std::string> left, right;
  for (const auto& [p, g] : matching)
  {
    CHECK(left.insert(p).second);
    CHECK(right.insert(g).second);
  }
}

TEST_CASE("emma equals brute force on random instances")
{
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i)
  {
    const auto [pred, gold] = random_instance(rng);
    CHECK(emma_matching(pred, gold) == oracle::emma_matches(morphs_of(pred), morphs_of(gold)));
  }
}

TEST_CASE("emma per language")
{
  const auto pred = analyses({{"cars"}, {"ب", "صراحة"}, {"42"}});
  const auto gold = analyses({{"car", "s"}, {"ب", "صراحة"}, {"42"}});
  const auto report = emma(pred, gold, {Language::EN, Language::EGY, Language::Other});
  CHECK(report.language(Language::EGY).f1 == doctest::Approx(1.0));
  CHECK(report.language(Language::EN).recall == doctest::Approx(0.5));
  CHECK(report.by_language.count(Language::Other) == 1);
  CHECK_THROWS_AS(emma(pred, gold, {Language::EN}), AlignmentError);
  CHECK_THROWS_AS(emma_score(pred, analyses({{"x"}})), AlignmentError);
}

TEST_CASE("chrf toy and limits")
{
  CHECK(chrf({"abc"}, {"abd"}).score == doctest::Approx(oracle::chrf_abc_abd));
  CHECK(chrf({"the cat sat on the mat ."}, {"the cat sat on the mat ."}).score == doctest::Approx(100.0));
  CHECK(chrf({"xyz"}, {"abc"}).score == doctest::Approx(0.0));
  CHECK(chrf({"ب صراحة"}, {"بصراحة"}).score < 100.0);
  CHECK_THROWS_AS(chrf({"a"}, {"a", "b"}), AlignmentError);
  CHECK_THROWS_AS(chrf({}, {}), ArgumentError);

  const auto report = chrf({"abc"}, {"abd"});
  CHECK(report.components.size() == 8);
  CHECK(report.components[0].precision == doctest::Approx(2.0 / 3.0));
  CHECK(report.components[6].word);
}

TEST_CASE("chrf words split one punctuation character")
{
  CHECK(chrf_words("hello, world!") == std::vector<std::string>{"hello", ",", "world", "!"});
  CHECK(chrf_words("(yes .") == std::vector<std::string>{"(", "yes", "."});
  CHECK(chrf_words("\"quoted\"") == std::vector<std::string>{"\"quoted", "\""});
}

TEST_CASE("chrf corpus score pools statistics")
{
  const std::vector<std::string> hyps = {"a cat", "the dog barks"};
  const std::vector<std::string> refs = {"the cat", "the dog barked"};
  ChrfStats pooled;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    pooled += chrf_sentence_stats(hyps[i], refs[i]);
  CHECK(chrf(hyps, refs).score == doctest::Approx(chrf_score(pooled)));
  const auto per = chrf_sentences(hyps, refs);
  CHECK(per.size() == 2);
  CHECK(per[1] == doctest::Approx(chrf({hyps[1]}, {refs[1]}).score));

  ChrfParams averaged;
  averaged.average_f = true;
  CHECK(chrf({"abc"}, {"abd"}, averaged).score == doctest::Approx(100.0 * (2.0 / 3.0 + 0.5) / 4.0));
}

TEST_CASE("oov rate")
{
  CHECK(oov_rate({"a", "b"}, {"a", "c", "c"}) == doctest::Approx(200.0 / 3.0));
  CHECK(oov_rate({"a"}, {"a"}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(oov_rate({"a"}, {}), ValidationError);
}

TEST_CASE("segmentation diagnostics")
{
  const auto pred = analyses({{"depends"}, {"ب", "صراحة"}, {"sit", "uation"}, {"went"}, {"ب", "النسبا", "لي"}});
  const auto gold = analyses({{"depend", "s"}, {"ب", "صراحة"}, {"situation"}, {"went"}, {"ب", "النسبالي"}});
  const auto diag
    = seg_diagnostics(pred, gold, {Language::EN, Language::EGY, Language::EN, Language::EN, Language::EGY});
  CHECK(diag.all.under == 1);
  CHECK(diag.all.over == 2);
  CHECK(diag.all.correct == 2);
  CHECK(diag.all.correct_seg == 1);
  CHECK(diag.all.correct_unseg == 1);
  CHECK(diag.by_language.at(Language::EN).total() == 3);
  CHECK(diag.by_language.at(Language::EGY).over == 1);
  CHECK_THROWS_AS(seg_diagnostics(pred, gold, {}), AlignmentError);
}
