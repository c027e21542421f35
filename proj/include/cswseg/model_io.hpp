#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/bpe.hpp"
#include "cswseg/english_rules.hpp"
#include "cswseg/mdl.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  // BPE:   "bpe v1 vocab=<N> marker=<m>", one "left right" merge per line.
  // MDL:   "mdl v1 F=<f> d=<mode> a=<mode> words=<w>", one "morph<TAB>weight" per line.
  // Both end with a "crc32 <hex>" line covering every preceding byte.
  std::string serialize(const BpeModel& model);
  std::string serialize(const MdlModel& model);
  BpeModel parse_bpe(std::string_view content);
  MdlModel parse_mdl(std::string_view content);

  // Rule sets are editable TSV without a checksum:
  //   "enrules v1 min_stem_len=<n>" then "word<TAB>morph#morph" lines;
  //   "arrules v1 scheme=<atb|d3> min_stem_len=<n> max_pro=<n> max_enc=<n> normalize=<flags>"
  //   then "pro:<clitic>" / "enc:<clitic>" lines.
  std::string serialize(const EnglishRules& rules);
  std::string serialize(const ArabicRules& rules);
  EnglishRules parse_english_rules(std::string_view content);
  ArabicRules parse_arabic_rules(std::string_view content);

  void save_model(const Segmenter& model, const std::filesystem::path& path);
  // Dispatches on the header line.
  SegmenterPtr load_model(const std::filesystem::path& path);
  SegmenterPtr parse_model(std::string_view content);

  std::uint32_t crc32_of(std::string_view bytes);

}
