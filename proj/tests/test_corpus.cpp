#include <doctest.h>

#include <random>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/corpus.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/gold.hpp"
#include "cswseg/text_io.hpp"

using namespace cswseg;

namespace
{
  std::vector<std::string> surfaces(const Sentence& sentence)
  {
    std::vector<std::string> out;
    for (const auto& token : sentence.tokens)
      out.push_back(token.surface);
    return out;
  }

  Sentence sentence_of(std::string_view line)
  {
    return parse_sentence(line);
  }

  const char* const cs_sentence = "it depends بصراحة بالنسبالي ع ال situation";
}

TEST_CASE("classify_script")
{
  CHECK(classify_script("situation") == Script::Latin);
  CHECK(classify_script("بصراحة") == Script::Arabic);
  CHECK(classify_script("123") == Script::Numeric);
  CHECK(classify_script("٣٤") == Script::Numeric);
  CHECK(classify_script("!?") == Script::Punct);
  CHECK(classify_script("الparking") == Script::Mixed);
  CHECK(classify_script("x1") == Script::Latin);
  // Combining marks go with their base letter.
  CHECK(classify_script("بَ") == Script::Arabic);
  CHECK(classify_script("e\xCC\x81") == Script::Latin);
  CHECK(language_of(Script::Mixed) == Language::EGY);
  CHECK(language_of(Script::Latin) == Language::EN);
  CHECK(language_of(Script::Punct) == Language::Other);
}

TEST_CASE("preprocess removes urls and splits punctuation and digits")
{
  const Preprocessor pre;
  CHECK(surfaces(*pre("check http://x.y now!")) == std::vector<std::string>{"check", "now", "!"});
  CHECK(surfaces(*pre("word123")) == std::vector<std::string>{"word", "123"});
  CHECK(surfaces(*pre("see www.example.com/a?b=c ok")) == std::vector<std::string>{"see", "ok"});
  CHECK(surfaces(*pre("  hi...  there  ")) == std::vector<std::string>{"hi", "...", "there"});
  CHECK(surfaces(*pre("<b>bold</b> text")) == std::vector<std::string>{"bold", "text"});
}

TEST_CASE("preprocess normalizes Arabic letters")
{
  const Preprocessor pre;
  CHECK(surfaces(*pre("مصطفى")) == std::vector<std::string>{"مصطفي"});
  CHECK(surfaces(*pre("أنا")) == std::vector<std::string>{"انا"});
  PreprocessOptions keep;
  keep.normalize_arabic = false;
  CHECK(surfaces(*Preprocessor(keep)("مصطفى")) == std::vector<std::string>{"مصطفى"});
}

TEST_CASE("preprocess removes emoticons and emoji and skips empty lines")
{
  const Preprocessor pre;
  CHECK(surfaces(*pre("great :) day 😂")) == std::vector<std::string>{"great", "day"});
  CHECK_FALSE(pre("   ").has_value());
  CHECK_FALSE(pre("http://only.url").has_value());
  CHECK_FALSE(pre(":-) 😀").has_value());
}

TEST_CASE("preprocess reports invalid UTF-8 with the line number")
{
  const Preprocessor pre;
  try
  {
    (void)pre("ok \xff bad", 17);
    FAIL("expected DecodeError");
  }
  catch (const DecodeError& e)
  {
    CHECK(e.line() == 17);
    CHECK(e.exit_code() == ExitCode::Validation);
  }
}

TEST_CASE("reserved characters are escaped on render and preprocessing is idempotent")
{
  const Preprocessor pre;
  const auto first = pre("tag #hash and a@b back\\slash");
  REQUIRE(first);
  const auto rendered = render(*first);
  CHECK(rendered.find("\\#") != std::string::npos);
  CHECK(rendered.find("\\@") != std::string::npos);
  const auto second = pre(rendered);
  REQUIRE(second);
  CHECK(render(*second) == rendered);
  CHECK(surfaces(parse_sentence(rendered)) == surfaces(*first));

  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces = {"hello", "بصراحة", "#", "@", "\\", "123", "!", " ", "  ", "word42",
                                           ":)", "😀", "http://a.b", "الparking", "ى", "أ", ".", "\\#", "x@@"};
  for (int trial = 0; trial < 300; ++trial)
  {
    std::string line;
    const auto n = 1 + rng() % 8;
    for (std::size_t k = 0; k < n; ++k)
      line += pieces[rng() % pieces.size()] + (rng() % 2 ? " " : "");
    const auto once = pre(line);
    if (!once)
      continue;
    const auto twice = pre(render(*once));
    REQUIRE(twice);
    CHECK(render(*twice) == render(*once));
  }
}

TEST_CASE("categorize")
{
  CHECK(categorize(sentence_of(cs_sentence)) == SentenceCategory::CS);
  CHECK(categorize(sentence_of("بصراحة ع ال")) == SentenceCategory::MonoEGY);
  CHECK(categorize(sentence_of("it depends")) == SentenceCategory::MonoEN);
  CHECK(categorize(sentence_of("123 !")) == SentenceCategory::Undetermined);
  CHECK(categorize(sentence_of("انا عايز الparking now")) == SentenceCategory::MCS);
  CHECK(is_code_switched(SentenceCategory::MCS));

  // A mixed-script word alone still mixes languages inside the word.
  CHECK(categorize(sentence_of("الparking")) == SentenceCategory::MCS);

  const ArabicRules rules;
  CHECK(categorize(sentence_of("انا عايز ال parking"), McsMode::CliticAdjacent, &rules) == SentenceCategory::MCS);
  CHECK(categorize(sentence_of("انا عايز ال parking"), McsMode::MixedScript) == SentenceCategory::CS);
  CHECK(categorize(sentence_of("انا عايز parking"), McsMode::CliticAdjacent, &rules) == SentenceCategory::CS);
}

TEST_CASE("english_percentage")
{
  CHECK(*english_percentage(sentence_of("it depends on the situation")) == doctest::Approx(1.0));
  CHECK(*english_percentage(sentence_of(cs_sentence)) == doctest::Approx(3.0 / 7.0));
  CHECK(*english_percentage(sentence_of("بصراحة ع ال")) == doctest::Approx(0.0));
  CHECK(*english_percentage(sentence_of("it 42 ! بصراحة")) == doctest::Approx(0.5));
  CHECK_FALSE(english_percentage(sentence_of("42 !")).has_value());
}

TEST_CASE("morphological_richness")
{
  CHECK(morphological_richness(5, 5) == doctest::Approx(1.0));
  CHECK(morphological_richness(5, 7) == doctest::Approx(1.4));
  CHECK(morphological_richness(7, 11) == doctest::Approx(11.0 / 7.0));
  CHECK_THROWS_AS(morphological_richness(0, 0), ValidationError);
}

TEST_CASE("subsample")
{
  std::vector<int> items(100);
  for (int i = 0; i < 100; ++i)
    items[i] = i;
  CHECK(subsample(items, 1.0, 3) == items);
  const auto quarter = subsample(items, 0.25, 9);
  CHECK(quarter.size() == 25);
  CHECK(std::is_sorted(quarter.begin(), quarter.end()));
  CHECK(subsample(items, 0.25, 9) == quarter);
  CHECK(subsample(items, 0.25, 10) != quarter);

  const std::vector<std::string> four = {"s0", "s1", "s2", "s3"};
  const auto pinned = subsample(four, 0.5, 7);
  CHECK(pinned.size() == 2);
  CHECK(subsample(four, 0.5, 7) == pinned);
  // Recorded once; guards the sampler against accidental changes.
  CHECK(subsample_indices(4, 0.5, 7) == std::vector<std::size_t>{1, 3});

  CHECK(subsample_size(10, 0.25) == 3);  // 2.5 rounds up
  CHECK(subsample_size(10, 0.24) == 2);
  CHECK_THROWS_AS(subsample_indices(10, 0.0, 1), ArgumentError);
  CHECK_THROWS_AS(subsample_indices(10, 1.5, 1), ArgumentError);
}

TEST_CASE("load_gold")
{
  const auto gold = parse_gold("depends\tdepend#s\nwent\twent\n\nبصراحة\tب#صراحة\n");
  REQUIRE(gold.size() == 2);
  CHECK(gold[0].entries[0].analysis.morphs == std::vector<std::string>{"depend", "s"});
  CHECK(gold[0].entries[1].analysis.morphs == std::vector<std::string>{"went"});
  CHECK(gold[1].entries[0].word.script == Script::Arabic);
  CHECK(gold[0].sentence.tokens.size() == 2);

  try
  {
    (void)parse_gold("it\tit\ncat\tdo#g\n", "x.tsv");
    FAIL("expected ValidationError");
  }
  catch (const ValidationError& e)
  {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_gold("justoneword\n"), FormatError);
  CHECK_THROWS_AS(parse_gold("ab\ta##b\n"), ValidationError);

  const auto swapped = parse_gold("#columns=segmentation,word\n#delim=+\ndepend+s\tdepends\n");
  CHECK(swapped[0].entries[0].analysis.morphs == std::vector<std::string>{"depend", "s"});
  const auto normalized = parse_gold("#normalize=arabic\nأنا\tانا\n");
  CHECK(normalized[0].entries[0].analysis.morphs == std::vector<std::string>{"انا"});
  CHECK_THROWS_AS(parse_gold("#normalize=none\nأنا\tانا\n"), ValidationError);
  const auto escaped = parse_gold("\\#tag\t\\##tag\n");
  CHECK(escaped[0].entries[0].word.surface == "#tag");
  CHECK(escaped[0].entries[0].analysis.morphs == std::vector<std::string>{"#", "tag"});
}

TEST_CASE("corpus_stats")
{
  const auto single = corpus_stats(flatten(parse_gold("went\twent\n")));
  CHECK(single.overall.segmented_ratio() == doctest::Approx(0.0));
  CHECK(single.overall.morphs_per_word() == doctest::Approx(1.0));
  CHECK(single.overall.max_morphs == 1);

  const auto fig = corpus_stats(flatten(load_gold(TEST_DATA_DIR "/cs_sentence.tsv")));
  CHECK(fig.overall.total_words == 7);
  CHECK(fig.overall.total_morphs == 11);
  CHECK(fig.by_language.at(Language::EGY).max_morphs == 3);
  CHECK(fig.by_language.at(Language::EN).segmented_words == 1);
  CHECK(fig.by_language.at(Language::EGY).unique_morphs == 6);
  CHECK_THROWS_AS(corpus_stats({}), ValidationError);
}
