#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cswseg/cli.hpp"
#include "cswseg/text_io.hpp"

using namespace cswseg;

namespace
{
  struct Run
  {
    int code = 0;
    std::string out;
    std::string err;
  };

  Run cli(std::vector<std::string> args)
  {
    args.insert(args.begin(), "cswseg");
    std::vector<const char*> argv;
    for (const auto& a : args)
      argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run run;
    run.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    run.out = out.str();
    run.err = err.str();
    return run;
  }

  std::filesystem::path scratch_dir()
  {
    const auto dir = std::filesystem::temp_directory_path() / "cswseg_cli";
    std::filesystem::create_directories(dir);
    return dir;
  }

  const std::string data = TEST_DATA_DIR;
}

TEST_CASE("exit codes")
{
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"stats", "--bogus"}).code == 2);
  CHECK(cli({"stats", "--gold", "/nonexistent/gold.tsv"}).code == 3);
  CHECK(cli({"subsample", "--in", data + "/cs_sentence.txt", "--out", "-", "--fraction", "2"}).code == 2);

  const auto bad = scratch_dir() / "bad.tsv";
  text::write_file(bad, "cat\tdo#g\n");
  const auto run = cli({"stats", "--gold", bad.string()});
  CHECK(run.code == 1);
  CHECK(run.err.find("bad.tsv") != std::string::npos);
}

TEST_CASE("stats")
{
  const auto run = cli({"stats", "--gold", data + "/cs_sentence.tsv"});
  REQUIRE(run.code == 0);
  CHECK(run.out.find("EGY") != std::string::npos);
  CHECK(run.out.find("1.571") != std::string::npos);  // 11 morphs / 7 words
}

TEST_CASE("preprocess")
{
  const auto dir = scratch_dir();
  text::write_file(dir / "raw.txt", "check http://x.y now!\n\n:) \nمصطفى جه\n");
  const auto run = cli({"preprocess", "--in", (dir / "raw.txt").string()});
  REQUIRE(run.code == 0);
  CHECK(run.out == "check now !\nمصطفي جه\n");
  const auto kept = cli({"preprocess", "--in", (dir / "raw.txt").string(), "--keep-empty", "--threads", "3"});
  CHECK(kept.out == "check now !\n\n\nمصطفي جه\n");
}

TEST_CASE("train, segment and desegment")
{
  const auto dir = scratch_dir();
  const auto model = (dir / "m.bpe").string();
  REQUIRE(cli({"train", "--method", "bpe", "--in", data + "/cs_sentence.txt", "--out", model, "--vocab", "40"}).code == 0);
  const auto seg = cli({"segment", "--model", model, "--in", data + "/cs_sentence.txt", "--format", "marker"});
  REQUIRE(seg.code == 0);
  const auto marker = dir / "seg.txt";
  text::write_file(marker, seg.out);
  const auto back = cli({"desegment", "--in", marker.string()});
  CHECK(back.out == text::read_file(data + "/cs_sentence.txt"));

  const auto mdl = (dir / "m.mdl").string();
  CHECK(cli({"train", "--method", "mdl", "--in", data + "/cs_sentence.txt", "--out", mdl, "-F", "0.005", "-d", "ones"}).code
        == 0);
  CHECK(cli({"train", "--method", "nope", "--in", data + "/cs_sentence.txt", "--out", mdl}).code == 2);

  const auto routed = cli({"segment", "--pipeline", data + "/routed.manifest", "--in", data + "/cs_sentence.txt"});
  CHECK(routed.out == "it depend#s ب#صراحة ب#النسبال#ي ع ال situation\n");
}

TEST_CASE("eval-seg")
{
  const auto gold = data + "/cs_sentence.tsv";
  const auto self = cli({"eval-seg", "--gold", gold, "--pred", gold});
  REQUIRE(self.code == 0);
  CHECK(self.out.find("EMMA F1 1.000") != std::string::npos);
  const auto routed = cli({"eval-seg", "--gold", gold, "--pipeline", data + "/routed.manifest", "--diagnostics"});
  CHECK(routed.code == 0);
  CHECK(routed.out.find("under") != std::string::npos);
}

TEST_CASE("eval-mt")
{
  const auto dir = scratch_dir();
  text::write_file(dir / "hyp.txt", "abc\n");
  text::write_file(dir / "ref.txt", "abd\n");
  text::write_file(dir / "two.txt", "abd\nxyz\n");
  const auto run = cli({"eval-mt", "--hyp", (dir / "hyp.txt").string(), "--ref", (dir / "ref.txt").string()});
  REQUIRE(run.code == 0);
  CHECK(run.out.find("29.2") != std::string::npos);
  CHECK(cli({"eval-mt", "--hyp", (dir / "two.txt").string(), "--ref", (dir / "ref.txt").string()}).code == 1);
}

TEST_CASE("subsample")
{
  const auto dir = scratch_dir();
  std::string content;
  for (int i = 0; i < 20; ++i)
    content += "line " + std::to_string(i) + (i % 3 ? "\r\n" : "\n");
  text::write_file(dir / "in.txt", content);
  const auto out = (dir / "out.txt").string();
  REQUIRE(cli({"subsample", "--in", (dir / "in.txt").string(), "--out", out, "--fraction", "1.0"}).code == 0);
  CHECK(text::read_file(out) == content);

  const auto a = (dir / "a.txt").string(), b = (dir / "b.txt").string();
  cli({"subsample", "--in", (dir / "in.txt").string(), "--out", a, "--fraction", "0.5", "--seed", "4"});
  cli({"subsample", "--in", (dir / "in.txt").string(), "--out", b, "--fraction", "0.5", "--seed", "4"});
  CHECK(text::read_file(a) == text::read_file(b));
  CHECK(text::split_lines(text::read_file(a)).size() == 10);
}
