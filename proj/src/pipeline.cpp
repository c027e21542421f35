#include "cswseg/pipeline.hpp"

#include <set>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/english_rules.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/mdl.hpp"
#include "cswseg/model_io.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  Analysis compose(const Chain& stages, std::string_view token)
  {
    Analysis current{{std::string(token)}};
    for (const auto& stage : stages)
    {
      Analysis next;
      for (const auto& morph : current.morphs)
      {
        auto part = stage->segment(morph);
        for (auto& piece : part.morphs)
          next.morphs.push_back(std::move(piece));
      }
      current = std::move(next);
    }
    return current;
  }

  std::vector<Analysis> route(const Sentence& sentence, const Router& router)
  {
    std::vector<Analysis> out;
    out.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens)
    {
      const auto it = router.find(token.script);
      if (it == router.end() || !it->second)
        out.push_back(Analysis{{token.surface}});
      else
        out.push_back(it->second->segment(token.surface));
    }
    return out;
  }

  Pipeline::Pipeline(Chain stages, std::map<Script, Chain> routes, std::string name)
    : _stages(std::move(stages))
    , _routes(std::move(routes))
    , _name(std::move(name))
  {
  }

  const Chain& Pipeline::chain_for(Script script) const
  {
    const auto it = _routes.find(script);
    return it != _routes.end() ? it->second : _stages;
  }

  Analysis Pipeline::segment(std::string_view token) const
  {
    if (token.empty())
      throw ArgumentError("cannot segment an empty token");
    return compose(chain_for(classify_script(token)), token);
  }

  std::string Pipeline::normalize(std::string_view token) const
  {
    std::string out(token);
    for (const auto& stage : chain_for(classify_script(token)))
      out = stage->normalize(out);
    return out;
  }

  std::vector<Analysis> Pipeline::segment_sentence(const Sentence& sentence) const
  {
    std::vector<Analysis> out;
    out.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens)
      out.push_back(compose(chain_for(token.script), token.surface));
    return out;
  }

  std::string Pipeline::describe() const
  {
    const auto chain_text = [](const Chain& chain) {
      if (chain.empty())
        return std::string("identity");
      std::string out;
      for (std::size_t i = 0; i < chain.size(); ++i)
      {
        if (i > 0)
          out += " > ";
        out += chain[i]->describe();
      }
      return out;
    };
    std::string out = _name + ": " + chain_text(_stages);
    for (const auto& [script, chain] : _routes)
      out += "; " + std::string(to_string(script)) + " -> " + chain_text(chain);
    return out;
  }

  namespace
  {
    std::map<std::string, std::string> parse_options(std::string_view text)
    {
      std::map<std::string, std::string> options;
      if (text.empty())
        return options;
      for (const auto& item : text::split(text, ','))
      {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
          throw ConfigError("malformed stage option '" + item + "'");
        options[item.substr(0, eq)] = item.substr(eq + 1);
      }
      return options;
    }

    void check_options(const StageSpec& spec, std::initializer_list<std::string_view> allowed)
    {
      for (const auto& [key, value] : spec.options)
      {
        bool ok = false;
        for (const auto name : allowed)
          ok = ok || key == name;
        if (!ok)
          throw ConfigError("unknown option '" + key + "' for stage " + spec.to_string());
      }
    }

    std::string option(const StageSpec& spec, const std::string& key, const std::string& fallback)
    {
      const auto it = spec.options.find(key);
      return it != spec.options.end() ? it->second : fallback;
    }

    std::uint64_t parse_count(const std::string& text, const std::string& what)
    {
      try
      {
        std::size_t used = 0;
        const auto value = std::stoull(text, &used);
        if (used != text.size())
          throw std::invalid_argument(text);
        return value;
      }
      catch (const std::exception&)
      {
        throw ConfigError("invalid " + what + " '" + text + "'");
      }
    }

    double parse_real(const std::string& text, const std::string& what)
    {
      try
      {
        std::size_t used = 0;
        const auto value = std::stod(text, &used);
        if (used != text.size())
          throw std::invalid_argument(text);
        return value;
      }
      catch (const std::exception&)
      {
        throw ConfigError("invalid " + what + " '" + text + "'");
      }
    }

    SegmenterPtr instantiate(const StageSpec& spec, const WordCounts& counts)
    {
      using Kind = StageSpec::Kind;
      switch (spec.kind)
      {
      case Kind::Identity:
        return std::make_shared<IdentitySegmenter>();
      case Kind::File:
        return load_model(spec.file);
      case Kind::ArabicRules:
        return std::make_shared<ArabicRules>(arabic_scheme_from_string(option(spec, "scheme", "atb")));
      case Kind::EnglishRules:
        return std::make_shared<EnglishRules>();
      case Kind::Bpe:
      {
        if (counts.empty())
          throw ConfigError("stage " + spec.to_string() + " has no training words");
        const auto vocab = parse_count(option(spec, "vocab", std::to_string(BpeModel::default_vocab_size)), "vocab");
        return std::make_shared<BpeModel>(
          BpeModel::train(counts, vocab, option(spec, "marker", std::string(BpeModel::default_marker))));
      }
      case Kind::Mdl:
      {
        if (counts.empty())
          throw ConfigError("stage " + spec.to_string() + " has no training words");
        MdlParams params;
        params.finish_threshold = parse_real(option(spec, "F", "0.003"), "F");
        params.dampening = dampening_from_string(option(spec, "d", "log"));
        params.algorithm = mdl_algorithm_from_string(option(spec, "a", "recursive"));
        params.seed = parse_count(option(spec, "seed", "0"), "seed");
        params.lexicon_cap = parse_count(option(spec, "cap", "0"), "cap");
        params.max_epochs = parse_count(option(spec, "epochs", "50"), "epochs");
        return std::make_shared<MdlModel>(train_mdl(counts, params).model);
      }
      }
      throw ConfigError("unknown stage kind");
    }

    WordCounts resegment_counts(const Segmenter& stage, const WordCounts& counts)
    {
      WordCounts next;
      for (const auto& [word, count] : counts)
        for (const auto& morph : stage.segment(word).morphs)
          next[morph] += count;
      return next;
    }

    Chain build_chain(const std::vector<StageSpec>& specs, WordCounts counts)
    {
      Chain chain;
      for (std::size_t i = 0; i < specs.size(); ++i)
      {
        auto stage = instantiate(specs[i], counts);
        if (i + 1 < specs.size())
          counts = resegment_counts(*stage, counts);
        chain.push_back(std::move(stage));
      }
      return chain;
    }
  }

  std::string StageSpec::to_string() const
  {
    switch (kind)
    {
    case Kind::Identity:
      return "identity";
    case Kind::File:
      return "file:" + file.string();
    case Kind::Bpe:
    case Kind::Mdl:
    case Kind::ArabicRules:
    case Kind::EnglishRules:
    {
      std::string out = kind == Kind::Bpe ? "bpe"
        : kind == Kind::Mdl               ? "mdl"
        : kind == Kind::ArabicRules       ? "ar-rules"
                                          : "en-rules";
      bool first = true;
      for (const auto& [key, value] : options)
      {
        out += first ? ":" : ",";
        out += key + "=" + value;
        first = false;
      }
      return out;
    }
    }
    return "?";
  }

  StageSpec parse_stage_spec(std::string_view text, const std::filesystem::path& base_dir)
  {
    StageSpec spec;
    const auto colon = text.find(':');
    const std::string head(text.substr(0, colon));
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    using Kind = StageSpec::Kind;
    if (head == "identity")
      spec.kind = Kind::Identity;
    else if (head == "file")
    {
      if (rest.empty())
        throw ConfigError("file stage needs a path");
      spec.kind = Kind::File;
      const std::filesystem::path path(rest);
      spec.file = path.is_absolute() || base_dir.empty() ? path : base_dir / path;
      return spec;
    }
    else if (head == "bpe")
      spec.kind = Kind::Bpe;
    else if (head == "mdl")
      spec.kind = Kind::Mdl;
    else if (head == "ar-rules")
      spec.kind = Kind::ArabicRules;
    else if (head == "en-rules")
      spec.kind = Kind::EnglishRules;
    else
      throw ConfigError("unknown stage '" + std::string(text) + "'");

    spec.options = parse_options(rest);
    switch (spec.kind)
    {
    case Kind::Bpe:
      check_options(spec, {"vocab", "marker"});
      break;
    case Kind::Mdl:
      check_options(spec, {"F", "d", "a", "seed", "cap", "epochs"});
      break;
    case Kind::ArabicRules:
      check_options(spec, {"scheme"});
      break;
    default:
      check_options(spec, {});
    }
    return spec;
  }

  bool PipelineRecipe::needs_training() const
  {
    for (const auto& stage : stages)
      if (stage.needs_training())
        return true;
    for (const auto& [script, chain] : routes)
      for (const auto& stage : chain)
        if (stage.needs_training())
          return true;
    return false;
  }

  PipelineRecipe parse_recipe(std::string_view content, const std::filesystem::path& base_dir)
  {
    PipelineRecipe recipe;
    const auto lines = text::split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
      const auto location = "pipeline line " + std::to_string(i + 1) + ": ";
      const auto words = unicode::split_whitespace(lines[i]);
      if (words.empty() || words[0][0] == '#')
        continue;
      const auto& directive = words[0];
      try
      {
        if (directive == "name")
        {
          if (words.size() != 2)
            throw ConfigError("name takes one word");
          recipe.name = words[1];
        }
        else if (directive == "train-on")
        {
          if (words.size() != 2)
            throw ConfigError("train-on takes one value");
          if (words[1] == "source")
            recipe.train_side = TrainSide::Source;
          else if (words[1] == "target")
            recipe.train_side = TrainSide::Target;
          else if (words[1] == "joint")
            recipe.train_side = TrainSide::Joint;
          else
            throw ConfigError("train-on must be source, target or joint");
        }
        else if (directive == "stage")
        {
          if (words.size() != 2)
            throw ConfigError("stage takes one spec");
          recipe.stages.push_back(parse_stage_spec(words[1], base_dir));
        }
        else if (directive == "route")
        {
          if (words.size() < 3)
            throw ConfigError("route needs a script class and at least one spec");
          const Script script = script_from_string(words[1]);
          if (recipe.routes.count(script))
            throw ConfigError("duplicate route for " + words[1]);
          auto& chain = recipe.routes[script];
          for (std::size_t k = 2; k < words.size(); ++k)
            chain.push_back(parse_stage_spec(words[k], base_dir));
        }
        else
          throw ConfigError("unknown directive '" + directive + "'");
      }
      catch (const Error& e)
      {
        throw ConfigError(location + e.what());
      }
    }
    return recipe;
  }

  PipelineRecipe load_recipe(const std::filesystem::path& path)
  {
    return parse_recipe(text::read_file(path), path.parent_path());
  }

  PipelinePtr build_pipeline(const PipelineRecipe& recipe, const std::vector<Sentence>* training)
  {
    if (recipe.needs_training() && training == nullptr)
      throw ConfigError("pipeline '" + recipe.name + "' has trainable stages but no training corpus was given");

    std::map<Script, WordCounts> by_script;
    if (training != nullptr)
      for (const auto& sentence : *training)
        for (const auto& token : sentence.tokens)
          ++by_script[token.script][token.surface];

    const auto gather = [&](const std::set<Script>& scripts) {
      WordCounts counts;
      for (const auto script : scripts)
      {
        const auto it = by_script.find(script);
        if (it == by_script.end())
          continue;
        for (const auto& [word, count] : it->second)
          counts[word] += count;
      }
      return counts;
    };

    std::set<Script> default_scripts = {Script::Arabic, Script::Latin, Script::Numeric, Script::Punct, Script::Mixed};
    std::map<Script, Chain> routes;
    for (const auto& [script, specs] : recipe.routes)
    {
      default_scripts.erase(script);
      routes.emplace(script, build_chain(specs, gather({script})));
    }
    Chain stages = build_chain(recipe.stages, gather(default_scripts));
    return std::make_shared<Pipeline>(std::move(stages), std::move(routes), recipe.name);
  }

  std::string render_hash(const std::vector<Analysis>& analyses)
  {
    std::string out;
    for (std::size_t i = 0; i < analyses.size(); ++i)
    {
      if (i > 0)
        out.push_back(' ');
      out += to_hash_string(analyses[i]);
    }
    return out;
  }

  std::string render_marker(const std::vector<Analysis>& analyses)
  {
    std::string out;
    for (const auto& analysis : analyses)
    {
      for (std::size_t m = 0; m < analysis.morphs.size(); ++m)
      {
        if (!out.empty())
          out.push_back(' ');
        out += text::escape(analysis.morphs[m]);
        if (m + 1 < analysis.morphs.size())
          out += "@@";
      }
    }
    return out;
  }

  std::string desegment_marker(std::string_view line)
  {
    std::vector<std::string> words;
    std::string current;
    bool open = false;
    for (const auto& piece : unicode::split_whitespace(line))
    {
      std::size_t content_end = piece.size();
      bool continues = false;
      for (std::size_t i = 0; i < piece.size(); ++i)
      {
        if (piece[i] == '\\' && i + 1 < piece.size() && text::is_reserved(piece[i + 1]))
        {
          ++i;
          continue;
        }
        if (piece[i] == '@' && i + 2 == piece.size() && piece[i + 1] == '@')
        {
          content_end = i;
          continues = true;
          break;
        }
      }
      current.append(piece, 0, content_end);
      open = continues;
      if (!continues)
      {
        words.push_back(std::move(current));
        current.clear();
      }
    }
    if (open)
      words.push_back(std::move(current));
    return text::join(words, " ");
  }

}
