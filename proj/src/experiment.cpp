#include "cswseg/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cswseg/errors.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  std::optional<std::filesystem::path> ExperimentConfig::hypothesis(const std::string& pipeline, double fraction) const
  {
    for (const auto& [key, path] : hypotheses)
      if (key.first == pipeline && std::abs(key.second - fraction) < 1e-9)
        return path;
    return std::nullopt;
  }

  std::vector<double> default_richness_bins()
  {
    std::vector<double> edges;
    for (int i = 0; i <= 10; ++i)
      edges.push_back(1.0 + 0.1 * i);
    return edges;
  }

  std::vector<double> default_english_bins()
  {
    std::vector<double> edges;
    for (int i = 0; i <= 10; ++i)
      edges.push_back(10.0 * i);
    return edges;
  }

  namespace
  {
    double parse_number(std::string_view text)
    {
      double value = 0.0;
      const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
      if (text.empty() || result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw ConfigError("invalid number '" + std::string(text) + "'");
      return value;
    }

    std::vector<double> parse_numbers(std::string_view text)
    {
      std::vector<double> values;
      for (auto word : unicode::split_whitespace(text))
      {
        std::replace(word.begin(), word.end(), ',', ' ');
        for (const auto& part : unicode::split_whitespace(word))
          values.push_back(parse_number(part));
      }
      return values;
    }

    std::vector<double> parse_edges(std::string_view text)
    {
      auto edges = parse_numbers(text);
      if (edges.size() < 2)
        throw ConfigError("bin edges need at least two values");
      for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i - 1] < edges[i]))
          throw ConfigError("bin edges must be strictly increasing");
      return edges;
    }
  }

  ExperimentConfig parse_experiment(std::string_view content, const std::filesystem::path& base_dir)
  {
    ExperimentConfig config;
    config.richness_bins = default_richness_bins();
    config.english_bins = default_english_bins();
    const auto resolve = [&](const std::string& value) {
      const std::filesystem::path path(value);
      return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    };

    const auto lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
      const auto line = unicode::trim(lines[i]);
      if (line.empty() || line[0] == '#')
        continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(i + 1) + ": expected 'key = value'");
      const auto key = unicode::trim(std::string_view(line).substr(0, eq));
      const auto value = unicode::trim(std::string_view(line).substr(eq + 1));
      try
      {
        if (value.empty())
          throw ConfigError("empty value for '" + key + "'");
        if (key == "gold")
          config.gold = resolve(value);
        else if (key == "train.source")
          config.train_source = resolve(value);
        else if (key == "train.target")
          config.train_target = resolve(value);
        else if (key == "dev.source")
          config.dev_source = resolve(value);
        else if (key == "dev.reference")
          config.dev_reference = resolve(value);
        else if (key == "seed")
        {
          std::uint64_t seed = 0;
          const auto result = std::from_chars(value.data(), value.data() + value.size(), seed);
          if (result.ec != std::errc{} || result.ptr != value.data() + value.size())
            throw ConfigError("invalid seed '" + value + "'");
          config.seed = seed;
        }
        else if (key == "fractions")
        {
          config.fractions = parse_numbers(value);
          if (config.fractions.empty())
            throw ConfigError("fractions list is empty");
          for (std::size_t k = 0; k < config.fractions.size(); ++k)
          {
            if (!(config.fractions[k] > 0.0 && config.fractions[k] <= 1.0))
              throw ConfigError("fractions must lie in (0, 1]");
            if (k > 0 && !(config.fractions[k - 1] < config.fractions[k]))
              throw ConfigError("fractions must be sorted ascending without repeats");
          }
        }
        else if (key == "mcs_mode")
          config.mcs_mode = mcs_mode_from_string(value);
        else if (key == "arabic_scheme")
          config.arabic_scheme = arabic_scheme_from_string(value);
        else if (key == "richness_bins")
          config.richness_bins = parse_edges(value);
        else if (key == "english_bins")
          config.english_bins = parse_edges(value);
        else if (key == "richness_pipeline")
          config.richness_pipeline = value;
        else if (key.rfind("pipeline.", 0) == 0)
        {
          const auto name = key.substr(9);
          if (name.empty() || name == "raw")
            throw ConfigError("invalid pipeline name '" + name + "'");
          for (const auto& [existing, path] : config.pipelines)
            if (existing == name)
              throw ConfigError("duplicate pipeline '" + name + "'");
          config.pipelines.emplace_back(name, resolve(value));
        }
        else if (key.rfind("hyp.", 0) == 0)
        {
          const auto spec = key.substr(4);
          const auto at = spec.rfind('@');
          if (at == std::string::npos || at == 0)
            throw ConfigError("hypothesis keys look like hyp.<pipeline>@<fraction>");
          const double fraction = parse_number(std::string_view(spec).substr(at + 1));
          config.hypotheses[{spec.substr(0, at), fraction}] = resolve(value);
        }
        else if (key.rfind("selection.", 0) == 0)
          config.selection[category_from_string(key.substr(10))] = resolve(value);
        else
          throw ConfigError("unknown key '" + key + "'");
      }
      catch (const Error& e)
      {
        throw ConfigError("config line " + std::to_string(i + 1) + ": " + e.what());
      }
    }

    for (const auto& [key, path] : config.hypotheses)
    {
      const bool known = std::any_of(config.pipelines.begin(), config.pipelines.end(),
                                     [&](const auto& p) { return p.first == key.first; });
      if (!known)
        throw ConfigError("hypothesis file given for unknown pipeline '" + key.first + "'");
    }
    if (!config.richness_pipeline.empty()
        && std::none_of(config.pipelines.begin(), config.pipelines.end(),
                        [&](const auto& p) { return p.first == config.richness_pipeline; }))
      throw ConfigError("richness_pipeline names unknown pipeline '" + config.richness_pipeline + "'");
    return config;
  }

  ExperimentConfig load_experiment(const std::filesystem::path& path)
  {
    return parse_experiment(text::read_file(path), path.parent_path());
  }

}
