#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/corpus.hpp"

namespace cswseg
{

  // Harness configuration, one `key = value` per line, '#' comments:
  //   gold = test.tsv
  //   train.source = train.egy        train.target = train.en
  //   dev.source = dev.egy            dev.reference = dev.en
  //   seed = 13
  //   fractions = 0.25 0.5 1.0
  //   mcs_mode = mixed-script | clitic-adjacent
  //   arabic_scheme = atb | d3         clitic inventory for clitic-adjacent MCS
  //   richness_bins = 1.0 1.1 ...     english_bins = 0 10 ... 100
  //   pipeline.<name> = bpe.manifest
  //   hyp.<pipeline>@<fraction> = hyp.txt
  //   selection.<Category> = hyp.txt  (MonoEGY, MonoEN, CS, MCS, Undetermined)
  //   richness_pipeline = <name>
  // Relative paths resolve against the config file's directory.
  struct ExperimentConfig
  {
    std::optional<std::filesystem::path> gold;
    std::optional<std::filesystem::path> train_source;
    std::optional<std::filesystem::path> train_target;
    std::optional<std::filesystem::path> dev_source;
    std::optional<std::filesystem::path> dev_reference;
    std::uint64_t seed = 1;
    std::vector<double> fractions = {0.25, 0.5, 1.0};
    McsMode mcs_mode = McsMode::MixedScript;
    ArabicScheme arabic_scheme = ArabicScheme::ATB;
    std::vector<double> richness_bins;
    std::vector<double> english_bins;
    // In file order.
    std::vector<std::pair<std::string, std::filesystem::path>> pipelines;
    std::map<std::pair<std::string, double>, std::filesystem::path> hypotheses;
    std::map<SentenceCategory, std::filesystem::path> selection;
    std::string richness_pipeline;

    std::optional<std::filesystem::path> hypothesis(const std::string& pipeline, double fraction) const;
  };

  std::vector<double> default_richness_bins();
  std::vector<double> default_english_bins();

  // Throws ConfigError on unknown keys, malformed values, unsorted bins or
  // fractions outside (0, 1].
  ExperimentConfig parse_experiment(std::string_view content, const std::filesystem::path& base_dir = {});
  ExperimentConfig load_experiment(const std::filesystem::path& path);

}
