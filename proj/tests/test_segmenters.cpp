#include <doctest.h>

#include <random>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/bpe.hpp"
#include "cswseg/english_rules.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/mdl.hpp"
#include "cswseg/pipeline.hpp"
#include "cswseg/seg_metrics.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"
#include "oracles.hpp"

using namespace cswseg;

namespace
{
  using Morphs = std::vector<std::string>;

  Morphs seg(const Segmenter& s, std::string_view token)
  {
    return s.segment(token).morphs;
  }

  std::string random_token(std::mt19937_64& rng, const std::vector<std::string>& alphabet, std::size_t max_len)
  {
    std::string out;
    const auto n = 1 + rng() % max_len;
    for (std::size_t i = 0; i < n; ++i)
      out += alphabet[rng() % alphabet.size()];
    return out;
  }

  const WordCounts toy_corpus = {{"lower", 5}, {"lowest", 2}, {"newer", 6}, {"wider", 3}, {"new", 2}, {"low", 4}};
}

TEST_CASE("bpe two-merge toy")
{
  const auto model = BpeModel::train({{"ab", 2}, {"ac", 1}}, 100, "_");
  CHECK(model.merges() == std::vector<BpeMerge>{{"a", "b"}, {"ab", "_"}});
  CHECK(seg(model, "ab") == Morphs{"ab"});
  CHECK(seg(model, "ac") == Morphs{"a", "c"});
  CHECK(seg(model, "z") == Morphs{"z"});
  CHECK(seg(model, "abab") == Morphs{"ab", "ab"});
}

TEST_CASE("bpe stops at the vocabulary size or when no pair repeats")
{
  const auto none = BpeModel::train({{"a", 1}}, 2, "_");
  CHECK(none.merges().empty());
  // alphabet {a,b,c,_} = 4; one merge brings it to 5
  const auto capped = BpeModel::train({{"ab", 2}, {"ac", 1}}, 5, "_");
  CHECK(capped.merges().size() == 1);
  CHECK_THROWS_AS(BpeModel::train({{"ab", 2}, {"ac", 1}}, 3, "_"), ArgumentError);
  CHECK_THROWS_AS(BpeModel::train({}, 10), ArgumentError);
}

TEST_CASE("bpe is deterministic and round-trips")
{
  const auto a = BpeModel::train(toy_corpus, 30);
  const auto b = BpeModel::train(toy_corpus, 30);
  CHECK(a.merges() == b.merges());
  CHECK_FALSE(a.merges().empty());

  std::mt19937_64 rng(11);
  const std::vector<std::string> alphabet = {"l", "o", "w", "e", "r", "n", "s", "t", "i", "d", "q", "ب", "ص"};
  for (int i = 0; i < 500; ++i)
  {
    const auto token = random_token(rng, alphabet, 12);
    CHECK(a.segment(token).surface() == token);
  }
}

TEST_CASE("bpe covering corpus gives zero OOV")
{
  const auto model = BpeModel::train(toy_corpus, 25);
  std::set<std::string> vocab;
  for (const auto& [word, count] : toy_corpus)
    for (const auto& m : seg(model, word))
      vocab.insert(m);
  for (const auto& ch : unicode::split_chars("lowernstid"))
    vocab.insert(ch);
  std::vector<std::string> dev;
  for (const auto* word : {"slower", "widest", "renew", "tiddle"})
    for (const auto& m : seg(model, word))
      dev.push_back(m);
  CHECK(oov_rate(vocab, dev) == doctest::Approx(0.0));
}

TEST_CASE("mdl training reaches the exhaustive optimum on a toy lexicon")
{
  const WordCounts counts = {{"doing", 3}, {"walking", 3}, {"do", 2}, {"walk", 2}};
  for (const auto dampening : {Dampening::Log, Dampening::Ones, Dampening::None})
  {
    std::map<std::string, double> weights;
    for (const auto& [word, count] : counts)
      weights[word] = dampen(count, dampening);
    const auto optimum = oracle::mdl_exhaustive(weights);
    for (const auto algorithm : {MdlAlgorithm::Recursive, MdlAlgorithm::Viterbi})
    {
      MdlParams params;
      params.dampening = dampening;
      params.algorithm = algorithm;
      const auto result = train_mdl(counts, params);
      CAPTURE(to_string(dampening));
      CAPTURE(to_string(algorithm));
      CHECK(result.model.total_cost() == doctest::Approx(optimum.cost).epsilon(1e-9));
      for (const auto& [word, w] : weights)
        CHECK(result.model.segment(word).morphs == optimum.analyses.at(word));
    }
  }
}

TEST_CASE("mdl decoding picks the cheapest segmentation")
{
  const auto result = train_mdl({{"doing", 3}, {"walking", 3}, {"do", 2}, {"walk", 2}});
  const auto& model = result.model;
  for (const auto* token : {"doingwalk", "walkdo", "ingdo", "xdo", "walkings"})
  {
    CAPTURE(token);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& option : oracle::all_segmentations(token))
      best = std::min(best, oracle::mdl_decode_cost(model.lexicon(), model.word_weight(), option));
    const auto chosen = model.segment(token);
    CHECK(chosen.surface() == token);
    CHECK(oracle::mdl_decode_cost(model.lexicon(), model.word_weight(), chosen.morphs) == doctest::Approx(best));
  }
}

TEST_CASE("mdl epoch costs never increase")
{
  std::mt19937_64 rng(3);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int corpus = 0; corpus < 10; ++corpus)
  {
    WordCounts counts;
    for (int i = 0; i < 40; ++i)
      counts[random_token(rng, alphabet, 8)] += 1 + rng() % 5;
    for (const auto algorithm : {MdlAlgorithm::Recursive, MdlAlgorithm::Viterbi})
    {
      MdlParams params;
      params.algorithm = algorithm;
      params.seed = static_cast<std::uint64_t>(corpus);
      const auto result = train_mdl(counts, params);
      double previous = result.baseline_cost;
      for (const double cost : result.epoch_costs)
      {
        CHECK(cost <= previous + 1e-9);
        previous = cost;
      }
      for (const auto& [word, analysis] : result.analyses)
        CHECK(analysis.surface() == word);
    }
  }
  CHECK_THROWS_AS(train_mdl({}), ArgumentError);
  MdlParams bad;
  bad.finish_threshold = 0.0;
  CHECK_THROWS_AS(train_mdl({{"a", 1}}, bad), ArgumentError);
}

TEST_CASE("mdl seed and lexicon cap")
{
  MdlParams params;
  params.dampening = Dampening::Ones;
  const auto first = train_mdl(toy_corpus, params);
  const auto second = train_mdl(toy_corpus, params);
  CHECK(first.model.lexicon() == second.model.lexicon());
  params.lexicon_cap = 4;
  const auto capped = train_mdl(toy_corpus, params);
  for (const auto& [word, count] : toy_corpus)
    CHECK(capped.model.segment(word).surface() == word);
}

TEST_CASE("english rules")
{
  const EnglishRules rules;
  CHECK(seg(rules, "cars") == Morphs{"car", "s"});
  CHECK(seg(rules, "churches") == Morphs{"church", "es"});
  CHECK(seg(rules, "went") == Morphs{"went"});
  CHECK(seg(rules, "caring") == Morphs{"car", "ing"});
  CHECK(seg(rules, "monkies") == Morphs{"monki", "es"});
  CHECK(seg(rules, "depends") == Morphs{"depend", "s"});
  CHECK(seg(rules, "situation") == Morphs{"situation"});
  CHECK(seg(rules, "boxes") == Morphs{"box", "es"});
  CHECK(seg(rules, "walked") == Morphs{"walk", "ed"});
  CHECK(seg(rules, "is") == Morphs{"is"});
  CHECK(seg(rules, "Cars") == Morphs{"Car", "s"});
  CHECK(seg(rules, "CHURCHES") == Morphs{"CHURCH", "ES"});
}

TEST_CASE("arabic rules")
{
  const ArabicRules atb(ArabicScheme::ATB);
  const ArabicRules d3(ArabicScheme::D3);
  CHECK(seg(atb, "بصراحة") == Morphs{"ب", "صراحة"});
  CHECK(seg(d3, "الكتب") == Morphs{"ال", "كتب"});
  CHECK(seg(atb, "الكتب") == Morphs{"الكتب"});
  CHECK(seg(atb, "ال") == Morphs{"ال"});
  CHECK(seg(d3, "ال") == Morphs{"ال"});
  CHECK(seg(atb, "ع") == Morphs{"ع"});
  CHECK(seg(atb, "بالنسبالي").front() == "ب");
  CHECK(seg(d3, "والكتب") == Morphs{"و", "ال", "كتب"});
  CHECK(atb.normalize("أنا") == "انا");
  CHECK(atb.segment("أكلى").surface() == atb.normalize("أكلى"));

  std::mt19937_64 rng(2);
  const std::vector<std::string> letters = {"ب", "ا", "ل", "و", "ف", "ك", "س", "ه", "م", "ن", "ي", "ى", "أ", "ت"};
  for (int i = 0; i < 500; ++i)
  {
    const auto token = random_token(rng, letters, 9);
    for (const auto* rules : {&atb, &d3})
    {
      const auto analysis = rules->segment(token);
      CHECK(analysis.surface() == rules->normalize(token));
      for (const auto& m : analysis.morphs)
        CHECK_FALSE(m.empty());
    }
    const auto a = atb.segment(token);
    const auto d = d3.segment(token);
    // D3 refines ATB by at most the article split.
    CHECK(d.size() - a.size() <= 1);
  }
}

TEST_CASE("compose")
{
  const auto bpe = std::make_shared<BpeModel>(BpeModel::train(toy_corpus, 30));
  const auto atb = std::make_shared<ArabicRules>(ArabicScheme::ATB);
  const auto en = std::make_shared<EnglishRules>();
  const auto identity = std::make_shared<IdentitySegmenter>();

  CHECK(compose({identity}, "situation").morphs == Morphs{"situation"});
  CHECK(compose({en}, "cars") == en->segment("cars"));

  const auto refined = compose({en, bpe}, "lowers").morphs;
  CHECK(text::join(refined, "") == "lowers");
  CHECK(refined.back() == "s");

  const auto arabic = compose({atb, bpe}, "بصراحة").morphs;
  REQUIRE(arabic.size() >= 2);
  CHECK(arabic.front() == "ب");

  // Later stages never merge across earlier boundaries.
  std::mt19937_64 rng(8);
  const std::vector<std::string> alphabet = {"l", "o", "w", "e", "r", "n", "s"};
  for (int i = 0; i < 200; ++i)
  {
    const auto token = random_token(rng, alphabet, 10);
    const auto first = en->segment(token).morphs;
    const auto both = compose({en, bpe}, token).morphs;
    std::size_t k = 0;
    for (const auto& morph : first)
    {
      std::string rebuilt;
      while (rebuilt.size() < morph.size() && k < both.size())
        rebuilt += both[k++];
      CHECK(rebuilt == morph);
    }
    CHECK(k == both.size());
  }
}

TEST_CASE("route")
{
  const auto atb = std::make_shared<ArabicRules>(ArabicScheme::ATB);
  const auto en = std::make_shared<EnglishRules>();
  const auto sentence = parse_sentence("it depends بصراحة بالنسبالي ع ال situation الparking 42");
  const auto analyses = route(sentence, {{Script::Arabic, atb}, {Script::Latin, en}});
  REQUIRE(analyses.size() == 9);
  CHECK(analyses[1].morphs == Morphs{"depend", "s"});
  CHECK(analyses[2].morphs == Morphs{"ب", "صراحة"});
  CHECK(analyses[6].morphs == Morphs{"situation"});
  CHECK(analyses[7].morphs == Morphs{"الparking"});
  CHECK(analyses[8].morphs == Morphs{"42"});

  const auto english = parse_sentence("the cars went walking");
  const auto routed = route(english, {{Script::Arabic, std::make_shared<IdentitySegmenter>()}, {Script::Latin, en}});
  for (std::size_t i = 0; i < english.tokens.size(); ++i)
    CHECK(routed[i] == en->segment(english.tokens[i].surface));
}

TEST_CASE("pipeline recipes")
{
  const auto recipe = load_recipe(TEST_DATA_DIR "/routed.manifest");
  CHECK(recipe.name == "routed");
  CHECK_FALSE(recipe.needs_training());
  const auto pipeline = build_pipeline(recipe);
  const auto analyses = pipeline->segment_sentence(parse_sentence("it depends بصراحة ال situation"));
  CHECK(render_hash(analyses) == "it depend#s ب#صراحة ال situation");
  CHECK(render_marker(analyses) == "it depend@@ s ب@@ صراحة ال situation");
  CHECK(desegment_marker(render_marker(analyses)) == "it depends بصراحة ال situation");

  const auto trained = parse_recipe("name joint\ntrain-on joint\nstage bpe:vocab=20\n");
  CHECK(trained.train_side == TrainSide::Joint);
  CHECK(trained.needs_training());
  CHECK_THROWS_AS(build_pipeline(trained), ConfigError);
  const std::vector<Sentence> train = {parse_sentence("lower lowest newer wider new low")};
  const auto built = build_pipeline(trained, &train);
  CHECK(built->segment("lowest").surface() == "lowest");

  CHECK_THROWS_AS(parse_recipe("stage nonsense\n"), ConfigError);
  CHECK_THROWS_AS(parse_recipe("route klingon identity\n"), ConfigError);
  CHECK_THROWS_AS(parse_recipe("frobnicate\n"), ConfigError);
}

TEST_CASE("marker format escapes reserved characters")
{
  const std::vector<Analysis> analyses = {{{"a@", "@b"}}, {{"#"}}, {{"x", "\\"}}};
  const auto marker = render_marker(analyses);
  CHECK(desegment_marker(marker) == "a\\@\\@b \\# x\\\\");
  const auto hash = render_hash(analyses);
  CHECK(hash == "a\\@#\\@b \\# x#\\\\");
}
