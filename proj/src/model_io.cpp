#include "cswseg/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

#include <zlib.h>

#include "cswseg/errors.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::uint32_t crc32_of(std::string_view bytes)
  {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks.
    while (!bytes.empty())
    {
      const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
      crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), chunk);
      bytes.remove_prefix(chunk);
    }
    return static_cast<std::uint32_t>(crc);
  }

  namespace
  {
    std::string hex8(std::uint32_t value)
    {
      char buffer[9];
      std::snprintf(buffer, sizeof buffer, "%08x", value);
      return buffer;
    }

    std::string with_checksum(std::string body)
    {
      body += "crc32 " + hex8(crc32_of(body)) + "\n";
      return body;
    }

    // Verifies and removes the trailing checksum line, returning the body lines.
    std::vector<std::string> checked_lines(std::string_view content, std::string_view kind)
    {
      std::string_view trimmed = content;
      while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r'))
        trimmed.remove_suffix(1);
      const auto last_break = trimmed.rfind('\n');
      const std::string_view last = last_break == std::string_view::npos ? trimmed : trimmed.substr(last_break + 1);
      if (last.substr(0, 6) != "crc32 ")
        throw FormatError(std::string(kind) + " model is missing its checksum line (truncated file?)");
      const std::string_view body = last_break == std::string_view::npos ? std::string_view{} : content.substr(0, last_break + 1);
      std::string stated(last.substr(6));
      if (!stated.empty() && stated.back() == '\r')
        stated.pop_back();
      if (stated != hex8(crc32_of(body)))
        throw ChecksumError(std::string(kind) + " model checksum mismatch: file is corrupted");
      return text::split_lines(body);
    }

    std::string format_double(double value)
    {
      char buffer[64];
      const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
      return std::string(buffer, result.ptr);
    }

    double parse_double(std::string_view text, std::string_view what)
    {
      double value = 0.0;
      const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
      if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw FormatError("invalid " + std::string(what) + " '" + std::string(text) + "'");
      return value;
    }

    std::size_t parse_size(std::string_view text, std::string_view what)
    {
      std::size_t value = 0;
      const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
      if (text.empty() || result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw FormatError("invalid " + std::string(what) + " '" + std::string(text) + "'");
      return value;
    }

    // "<magic> v1 key=value ..." -> key/value map.
    std::map<std::string, std::string> parse_header(std::string_view line, std::string_view magic)
    {
      const auto words = text::split(line, ' ');
      if (words.empty() || words[0] != magic)
        throw FormatError("expected a '" + std::string(magic) + "' header");
      if (words.size() < 2 || words[1] != "v1")
        throw FormatError("unsupported " + std::string(magic) + " format version '"
                          + (words.size() < 2 ? std::string() : words[1]) + "'");
      std::map<std::string, std::string> fields;
      for (std::size_t i = 2; i < words.size(); ++i)
      {
        if (words[i].empty())
          continue;
        const auto eq = words[i].find('=');
        if (eq == std::string::npos)
          throw FormatError("malformed header field '" + words[i] + "'");
        fields[words[i].substr(0, eq)] = words[i].substr(eq + 1);
      }
      return fields;
    }

    const std::string& field(const std::map<std::string, std::string>& fields, const std::string& key)
    {
      const auto it = fields.find(key);
      if (it == fields.end())
        throw FormatError("header is missing '" + key + "'");
      return it->second;
    }

    std::string located(std::size_t line, const std::string& what)
    {
      return "line " + std::to_string(line) + ": " + what;
    }

    std::string first_line(std::string_view content)
    {
      const auto end = content.find('\n');
      std::string line(content.substr(0, end));
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      return line;
    }
  }

  std::string serialize(const BpeModel& model)
  {
    std::string out = "bpe v1 vocab=" + std::to_string(model.vocab_size()) + " marker=" + text::escape(model.marker()) + "\n";
    for (const auto& merge : model.merges())
      out += text::escape(merge.left) + " " + text::escape(merge.right) + "\n";
    return with_checksum(std::move(out));
  }

  BpeModel parse_bpe(std::string_view content)
  {
    const auto lines = checked_lines(content, "BPE");
    if (lines.empty())
      throw FormatError("BPE model is empty");
    const auto fields = parse_header(lines[0], "bpe");
    const auto vocab = parse_size(field(fields, "vocab"), "vocab");
    const auto marker = text::unescape(field(fields, "marker"));
    std::vector<BpeMerge> merges;
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
      if (lines[i].empty())
        continue;
      const auto parts = text::split(lines[i], ' ');
      if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
        throw FormatError(located(i + 1, "expected 'left right' merge"));
      merges.push_back({text::unescape(parts[0]), text::unescape(parts[1])});
    }
    try
    {
      return BpeModel(std::move(merges), vocab, marker);
    }
    catch (const Error& e)
    {
      throw FormatError(std::string("invalid BPE model: ") + e.what());
    }
  }

  std::string serialize(const MdlModel& model)
  {
    const auto& params = model.params();
    std::string out = "mdl v1 F=" + format_double(params.finish_threshold) + " d=" + std::string(to_string(params.dampening))
      + " a=" + std::string(to_string(params.algorithm)) + " words=" + format_double(model.word_weight()) + "\n";
    for (const auto& [morph, weight] : model.lexicon())
      out += text::escape(morph) + "\t" + format_double(weight) + "\n";
    return with_checksum(std::move(out));
  }

  MdlModel parse_mdl(std::string_view content)
  {
    const auto lines = checked_lines(content, "MDL");
    if (lines.empty())
      throw FormatError("MDL model is empty");
    const auto fields = parse_header(lines[0], "mdl");
    MdlParams params;
    params.finish_threshold = parse_double(field(fields, "F"), "F");
    try
    {
      params.dampening = dampening_from_string(field(fields, "d"));
      params.algorithm = mdl_algorithm_from_string(field(fields, "a"));
    }
    catch (const ArgumentError& e)
    {
      throw FormatError(e.what());
    }
    const double words = parse_double(field(fields, "words"), "words");
    std::map<std::string, double> lexicon;
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
      if (lines[i].empty())
        continue;
      const auto tab = lines[i].find('\t');
      if (tab == std::string::npos)
        throw FormatError(located(i + 1, "expected 'morph<TAB>weight'"));
      const auto morph = text::unescape(std::string_view(lines[i]).substr(0, tab));
      if (!lexicon.emplace(morph, parse_double(std::string_view(lines[i]).substr(tab + 1), "weight")).second)
        throw FormatError(located(i + 1, "duplicate morph '" + morph + "'"));
    }
    return MdlModel(std::move(lexicon), params, words);
  }

  std::string serialize(const EnglishRules& rules)
  {
    const auto& config = rules.config();
    std::string out = "enrules v1 min_stem_len=" + std::to_string(config.min_stem_len)
      + " suffixes=" + text::join(config.regular_suffixes, ",") + " es_after=" + text::join(config.es_stem_endings, ",") + "\n";
    for (const auto& [word, lengths] : config.irregular_forms)
    {
      const auto chars = unicode::split_chars(word);
      Analysis analysis;
      std::size_t pos = 0;
      for (std::size_t i = 0; i < lengths.size(); ++i)
      {
        const std::size_t take = i + 1 == lengths.size() ? chars.size() - pos : lengths[i];
        std::string morph;
        for (std::size_t k = 0; k < take; ++k)
          morph += chars[pos + k];
        pos += take;
        analysis.morphs.push_back(std::move(morph));
      }
      out += text::escape(word) + "\t" + to_hash_string(analysis) + "\n";
    }
    return out;
  }

  EnglishRules parse_english_rules(std::string_view content)
  {
    const auto lines = text::split_lines(content);
    if (lines.empty())
      throw FormatError("English rule file is empty");
    const auto fields = parse_header(lines[0], "enrules");
    EnglishRules::Config config;
    config.min_stem_len = parse_size(field(fields, "min_stem_len"), "min_stem_len");
    if (fields.count("suffixes"))
      config.regular_suffixes = text::split(fields.at("suffixes"), ',');
    if (fields.count("es_after"))
      config.es_stem_endings = text::split(fields.at("es_after"), ',');
    EnglishRules rules(std::move(config));
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
      if (lines[i].empty() || lines[i][0] == '#')
        continue;
      const auto tab = lines[i].find('\t');
      const std::string_view line(lines[i]);
      const auto word = text::unescape(line.substr(0, tab));
      const auto analysis = parse_hash_string(tab == std::string::npos ? line : line.substr(tab + 1));
      if (analysis.surface() != word)
        throw ValidationError(located(i + 1, "analysis does not concatenate to '" + word + "'"));
      rules.add_irregular(analysis);
    }
    return rules;
  }

  std::string serialize(const ArabicRules& rules)
  {
    const auto& config = rules.config();
    std::vector<std::string> flags;
    if (config.normalize_alif)
      flags.push_back("alif");
    if (config.normalize_ya)
      flags.push_back("ya");
    std::string out = "arrules v1 scheme=" + std::string(to_string(config.scheme)) + " min_stem_len="
      + std::to_string(config.min_stem_len) + " max_pro=" + std::to_string(config.max_proclitics)
      + " max_enc=" + std::to_string(config.max_enclitics) + " normalize=" + (flags.empty() ? "none" : text::join(flags, ","))
      + "\n";
    out += "art:" + text::escape(config.article) + "\n";
    for (const auto& clitic : config.proclitics)
      out += "pro:" + text::escape(clitic) + "\n";
    for (const auto& clitic : config.enclitics)
      out += "enc:" + text::escape(clitic) + "\n";
    return out;
  }

  ArabicRules parse_arabic_rules(std::string_view content)
  {
    const auto lines = text::split_lines(content);
    if (lines.empty())
      throw FormatError("Arabic rule file is empty");
    const auto fields = parse_header(lines[0], "arrules");
    ArabicRules::Config config;
    try
    {
      config.scheme = arabic_scheme_from_string(field(fields, "scheme"));
    }
    catch (const ArgumentError& e)
    {
      throw FormatError(e.what());
    }
    config.min_stem_len = parse_size(field(fields, "min_stem_len"), "min_stem_len");
    config.max_proclitics = parse_size(field(fields, "max_pro"), "max_pro");
    config.max_enclitics = parse_size(field(fields, "max_enc"), "max_enc");
    config.normalize_alif = false;
    config.normalize_ya = false;
    for (const auto& flag : text::split(field(fields, "normalize"), ','))
    {
      if (flag == "alif")
        config.normalize_alif = true;
      else if (flag == "ya")
        config.normalize_ya = true;
      else if (flag != "none")
        throw FormatError("unknown normalization '" + flag + "'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
      const std::string_view line(lines[i]);
      if (line.empty() || line[0] == '#')
        continue;
      const auto colon = line.find(':');
      if (colon == std::string_view::npos)
        throw FormatError(located(i + 1, "expected 'pro:', 'enc:' or 'art:'"));
      const auto kind = line.substr(0, colon);
      auto value = text::unescape(line.substr(colon + 1));
      if (kind == "pro")
        config.proclitics.push_back(std::move(value));
      else if (kind == "enc")
        config.enclitics.push_back(std::move(value));
      else if (kind == "art")
        config.article = std::move(value);
      else
        throw FormatError(located(i + 1, "unknown entry kind '" + std::string(kind) + "'"));
    }
    try
    {
      return ArabicRules(std::move(config));
    }
    catch (const Error& e)
    {
      throw ValidationError(std::string("invalid Arabic rule file: ") + e.what());
    }
  }

  void save_model(const Segmenter& model, const std::filesystem::path& path)
  {
    std::string content;
    if (const auto* bpe = dynamic_cast<const BpeModel*>(&model))
      content = serialize(*bpe);
    else if (const auto* mdl = dynamic_cast<const MdlModel*>(&model))
      content = serialize(*mdl);
    else if (const auto* en = dynamic_cast<const EnglishRules*>(&model))
      content = serialize(*en);
    else if (const auto* ar = dynamic_cast<const ArabicRules*>(&model))
      content = serialize(*ar);
    else
      throw ArgumentError("cannot save a model of type " + model.describe());
    text::write_file(path, content);
  }

  SegmenterPtr parse_model(std::string_view content)
  {
    const auto header = first_line(content);
    const auto magic = header.substr(0, header.find(' '));
    if (magic == "bpe")
      return std::make_shared<BpeModel>(parse_bpe(content));
    if (magic == "mdl")
      return std::make_shared<MdlModel>(parse_mdl(content));
    if (magic == "enrules")
      return std::make_shared<EnglishRules>(parse_english_rules(content));
    if (magic == "arrules")
      return std::make_shared<ArabicRules>(parse_arabic_rules(content));
    throw FormatError("unrecognized model file header '" + header + "'");
  }

  SegmenterPtr load_model(const std::filesystem::path& path)
  {
    const auto content = text::read_file(path);
    try
    {
      return parse_model(content);
    }
    catch (const ChecksumError& e)
    {
      throw ChecksumError(path.string() + ": " + e.what());
    }
    catch (const FormatError& e)
    {
      throw FormatError(path.string() + ": " + e.what());
    }
  }

}
