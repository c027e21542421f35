#include <doctest.h>

#include <filesystem>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/bpe.hpp"
#include "cswseg/english_rules.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/mdl.hpp"
#include "cswseg/model_io.hpp"
#include "cswseg/text_io.hpp"

using namespace cswseg;

namespace
{
  const WordCounts corpus = {{"lower", 5}, {"lowest", 2}, {"newer", 6}, {"wider", 3}, {"ab#c", 2}, {"x@y", 1}};

  std::filesystem::path scratch(const std::string& name)
  {
    const auto dir = std::filesystem::temp_directory_path() / "cswseg_model_io";
    std::filesystem::create_directories(dir);
    return dir / name;
  }
}

TEST_CASE("crc32 of the standard check string")
{
  CHECK(crc32_of("123456789") == 0xCBF43926u);
}

TEST_CASE("bpe round trip")
{
  const auto model = BpeModel::train(corpus, 30);
  const auto text = serialize(model);
  CHECK(text.rfind("bpe v1 vocab=", 0) == 0);
  const auto back = parse_bpe(text);
  CHECK(back.merges() == model.merges());
  CHECK(back.vocab_size() == model.vocab_size());
  CHECK(back.marker() == model.marker());
  CHECK(serialize(back) == text);

  const auto path = scratch("model.bpe");
  save_model(model, path);
  const auto loaded = load_model(path);
  for (const auto* word : {"lowest", "ab#c", "x@y", "unseen"})
    CHECK(loaded->segment(word) == model.segment(word));
}

TEST_CASE("mdl round trip")
{
  MdlParams params;
  params.finish_threshold = 0.005;
  params.dampening = Dampening::Ones;
  params.algorithm = MdlAlgorithm::Viterbi;
  const auto model = train_mdl(corpus, params).model;
  const auto text = serialize(model);
  const auto back = parse_mdl(text);
  CHECK(back.lexicon() == model.lexicon());
  CHECK(back.params().finish_threshold == model.params().finish_threshold);
  CHECK(back.params().dampening == model.params().dampening);
  CHECK(back.params().algorithm == model.params().algorithm);
  CHECK(back.word_weight() == model.word_weight());
  CHECK(serialize(back) == text);
  for (const auto* word : {"lowest", "ab#c", "newest", "q"})
    CHECK(back.segment(word) == model.segment(word));
}

TEST_CASE("rule sets round trip")
{
  EnglishRules en;
  en.add_irregular(Analysis{{"mic", "e"}});
  const auto en_back = parse_english_rules(serialize(en));
  CHECK(serialize(en_back) == serialize(en));
  CHECK(en_back.segment("mice") == Analysis{{"mic", "e"}});

  const ArabicRules ar(ArabicScheme::D3);
  const auto ar_back = parse_arabic_rules(serialize(ar));
  CHECK(serialize(ar_back) == serialize(ar));
  CHECK(ar_back.segment("والكتب") == ar.segment("والكتب"));
}

TEST_CASE("damaged model files")
{
  const auto text = serialize(BpeModel::train(corpus, 30));

  // Cut before the checksum line.
  const auto truncated = text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(parse_bpe(truncated), FormatError);

  auto corrupted = text;
  corrupted[corrupted.find('\n') + 1] ^= 0x01;
  CHECK_THROWS_AS(parse_bpe(corrupted), ChecksumError);

  auto versioned = text;
  versioned.replace(versioned.find("v1"), 2, "v9");
  CHECK_THROWS_AS(parse_model(versioned), FormatError);

  CHECK_THROWS_AS(parse_model("garbage\n"), FormatError);
  CHECK_THROWS_AS(parse_model(""), FormatError);
  CHECK_THROWS_AS(load_model(scratch("does-not-exist.bpe")), IoError);

  const auto path = scratch("corrupt.bpe");
  text::write_file(path, corrupted);
  try
  {
    (void)load_model(path);
    FAIL("expected ChecksumError");
  }
  catch (const ChecksumError& e)
  {
    CHECK(std::string(e.what()).find("corrupt.bpe") != std::string::npos);
  }
}
