#include "cswseg/harness.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "cswseg/errors.hpp"
#include "cswseg/text_io.hpp"

namespace cswseg
{

  namespace
  {
    std::string ratio(double value)
    {
      return text::format_fixed(value, 3);
    }

    std::string score(double value)
    {
      return text::format_fixed(value, 1);
    }

    std::string score(const std::optional<double>& value)
    {
      return value ? score(*value) : "NA";
    }

    std::vector<Language> report_languages(const std::map<Language, PrfScore>& present)
    {
      std::vector<Language> out = {Language::EGY, Language::EN};
      if (present.count(Language::Other))
        out.push_back(Language::Other);
      return out;
    }
  }

  std::vector<SegEvalRow> run_segmentation_eval(const std::vector<GoldSentence>& gold, const std::vector<NamedSegmenter>& systems)
  {
    const auto entries = flatten(gold);
    if (entries.empty())
      throw ConfigError("gold corpus has no words");
    std::vector<Analysis> reference;
    std::vector<Language> languages;
    for (const auto& entry : entries)
    {
      reference.push_back(entry.analysis);
      languages.push_back(language_of(entry.word.script));
    }

    std::vector<NamedSegmenter> all = {{"raw", std::make_shared<IdentitySegmenter>()}};
    all.insert(all.end(), systems.begin(), systems.end());

    std::vector<SegEvalRow> rows;
    for (const auto& [name, segmenter] : all)
    {
      std::vector<Analysis> predicted;
      predicted.reserve(entries.size());
      for (const auto& entry : entries)
        predicted.push_back(segmenter->segment(entry.word.surface));
      rows.push_back({name, emma(predicted, reference, languages), seg_diagnostics(predicted, reference, languages)});
    }
    return rows;
  }

  std::string format_seg_eval(const std::vector<SegEvalRow>& rows)
  {
    std::string out = "system\tlanguage\tprecision\trecall\tf1\tpredicted_morphs\tgold_morphs\twords\n";
    for (const auto& row : rows)
    {
      const auto line = [&](std::string_view language, const PrfScore& s) {
        out += row.system + "\t" + std::string(language) + "\t" + ratio(s.precision) + "\t" + ratio(s.recall) + "\t"
          + ratio(s.f1) + "\t" + std::to_string(s.predicted) + "\t" + std::to_string(s.gold) + "\t"
          + std::to_string(s.words) + "\n";
      };
      for (const auto language : report_languages(row.emma.by_language))
        line(to_string(language), row.emma.language(language));
      line("All", row.emma.all);
    }
    return out;
  }

  std::string format_diagnostics(const std::vector<SegEvalRow>& rows)
  {
    std::string out = "system\tlanguage\tunder\tover\tcorrect\tcorrect_seg\tcorrect_unseg\ttotal\n";
    for (const auto& row : rows)
    {
      const auto line = [&](std::string_view language, const DiagnosticCounts& c) {
        out += row.system + "\t" + std::string(language) + "\t" + std::to_string(c.under) + "\t" + std::to_string(c.over)
          + "\t" + std::to_string(c.correct) + "\t" + std::to_string(c.correct_seg) + "\t"
          + std::to_string(c.correct_unseg) + "\t" + std::to_string(c.total()) + "\n";
      };
      for (const auto language : {Language::EGY, Language::EN, Language::Other})
      {
        const auto it = row.diagnostics.by_language.find(language);
        if (it != row.diagnostics.by_language.end())
          line(to_string(language), it->second);
        else if (language != Language::Other)
          line(to_string(language), {});
      }
      line("All", row.diagnostics.all);
    }
    return out;
  }

  std::string_view to_string(CategoryRow row)
  {
    switch (row)
    {
    case CategoryRow::All:
      return "All";
    case CategoryRow::MonoEGY:
      return "MonoEGY";
    case CategoryRow::MonoEN:
      return "MonoEN";
    case CategoryRow::CS:
      return "CS";
    case CategoryRow::MCS:
      return "MCS";
    case CategoryRow::Undetermined:
      return "Undetermined";
    }
    return "?";
  }

  const std::vector<CategoryRow>& category_rows()
  {
    static const std::vector<CategoryRow> rows = {CategoryRow::All, CategoryRow::MonoEGY, CategoryRow::MonoEN,
                                                  CategoryRow::CS,  CategoryRow::MCS,     CategoryRow::Undetermined};
    return rows;
  }

  bool row_contains(CategoryRow row, SentenceCategory category)
  {
    switch (row)
    {
    case CategoryRow::All:
      return true;
    case CategoryRow::MonoEGY:
      return category == SentenceCategory::MonoEGY;
    case CategoryRow::MonoEN:
      return category == SentenceCategory::MonoEN;
    case CategoryRow::CS:
      return is_code_switched(category);
    case CategoryRow::MCS:
      return category == SentenceCategory::MCS;
    case CategoryRow::Undetermined:
      return category == SentenceCategory::Undetermined;
    }
    return false;
  }

  std::vector<std::size_t> competition_ranks(const std::vector<std::optional<double>>& scores)
  {
    std::vector<std::size_t> ranks(scores.size(), 0);
    for (std::size_t i = 0; i < scores.size(); ++i)
    {
      if (!scores[i])
        continue;
      std::size_t better = 0;
      for (const auto& other : scores)
        if (other && *other > *scores[i])
          ++better;
      ranks[i] = better + 1;
    }
    return ranks;
  }

  namespace
  {
    void check_aligned(std::size_t expected, std::size_t actual, const std::string& what)
    {
      if (expected != actual)
        throw AlignmentError(what + " has " + std::to_string(actual) + " lines but " + std::to_string(expected)
                             + " were expected; first unmatched line is " + std::to_string(std::min(expected, actual) + 1));
    }
  }

  CategoryScores eval_by_category(const std::vector<NamedLines>& hypotheses,
                                  const std::vector<std::string>& references,
                                  const std::vector<SentenceCategory>& categories,
                                  const ChrfParams& params)
  {
    check_aligned(references.size(), categories.size(), "category list");
    CategoryScores out;
    out.rows = category_rows();
    std::vector<std::vector<ChrfStats>> stats;
    for (const auto& [name, lines] : hypotheses)
    {
      check_aligned(references.size(), lines.size(), "hypothesis '" + name + "'");
      out.systems.push_back(name);
      std::vector<ChrfStats> per_sentence;
      per_sentence.reserve(lines.size());
      for (std::size_t i = 0; i < lines.size(); ++i)
        per_sentence.push_back(chrf_sentence_stats(lines[i], references[i], params));
      stats.push_back(std::move(per_sentence));
    }

    for (const auto row : out.rows)
    {
      std::size_t count = 0;
      for (const auto category : categories)
        if (row_contains(row, category))
          ++count;
      out.counts.push_back(count);

      std::vector<std::optional<double>> scores;
      for (const auto& per_sentence : stats)
      {
        if (count == 0)
        {
          scores.push_back(std::nullopt);
          continue;
        }
        ChrfStats total;
        for (std::size_t i = 0; i < categories.size(); ++i)
          if (row_contains(row, categories[i]))
            total += per_sentence[i];
        scores.push_back(chrf_score(total, params));
      }
      const auto ranks = out.systems.size() >= 2 ? competition_ranks(scores) : std::vector<std::size_t>(scores.size(), 0);
      std::vector<CategoryCell> cells;
      for (std::size_t s = 0; s < scores.size(); ++s)
        cells.push_back({scores[s], ranks[s]});
      out.cells.push_back(std::move(cells));
    }
    return out;
  }

  std::string format_categories(const CategoryScores& scores)
  {
    std::string out = "category\tsentences\tsystem\tchrf2pp\trank\n";
    for (std::size_t r = 0; r < scores.rows.size(); ++r)
      for (std::size_t s = 0; s < scores.systems.size(); ++s)
      {
        const auto& cell = scores.cells[r][s];
        out += std::string(to_string(scores.rows[r])) + "\t" + std::to_string(scores.counts[r]) + "\t" + scores.systems[s]
          + "\t" + score(cell.score) + "\t" + (cell.rank ? std::to_string(cell.rank) : "-") + "\n";
      }
    return out;
  }

  SelectionResult system_selection(const std::map<SentenceCategory, std::vector<std::string>>& routes,
                                   const std::vector<std::string>& references,
                                   const std::vector<SentenceCategory>& categories,
                                   const ChrfParams& params)
  {
    check_aligned(references.size(), categories.size(), "category list");
    for (const auto& [category, lines] : routes)
      check_aligned(references.size(), lines.size(), "selection file for " + std::string(to_string(category)));

    SelectionResult result;
    result.composite.reserve(references.size());
    for (std::size_t i = 0; i < categories.size(); ++i)
    {
      auto it = routes.find(categories[i]);
      if (it == routes.end() && categories[i] == SentenceCategory::MCS)
        it = routes.find(SentenceCategory::CS);
      if (it == routes.end())
        throw ConfigError("no selection route for category " + std::string(to_string(categories[i])) + " (line "
                          + std::to_string(i + 1) + ")");
      result.composite.push_back(it->second[i]);
    }
    result.overall = chrf(result.composite, references, params);
    result.by_category = eval_by_category({{"selection", result.composite}}, references, categories, params);
    return result;
  }

  BinnedReport binned_report(const std::vector<double>& scores,
                             const std::vector<std::optional<double>>& features,
                             const std::vector<double>& edges)
  {
    if (edges.size() < 2)
      throw ArgumentError("binned report needs at least two bin edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (!(edges[i - 1] < edges[i]))
        throw ArgumentError("bin edges must be strictly increasing");
    if (scores.size() != features.size())
      throw AlignmentError("binned report needs one feature value per score");

    BinnedReport report;
    std::vector<double> sums(edges.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      report.bins.push_back({edges[i], edges[i + 1], 0, std::nullopt});
    for (std::size_t i = 0; i < scores.size(); ++i)
    {
      if (!features[i])
      {
        ++report.missing;
        continue;
      }
      const double x = *features[i];
      if (x < edges.front() || x > edges.back())
      {
        ++report.out_of_range;
        continue;
      }
      // First edge strictly greater than x closes x's bin; x == last edge goes to the last bin.
      std::size_t bin = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
      bin = std::min(bin, edges.size() - 1) - 1;
      ++report.bins[bin].count;
      sums[bin] += scores[i];
    }
    for (std::size_t b = 0; b < report.bins.size(); ++b)
      if (report.bins[b].count > 0)
        report.bins[b].mean = sums[b] / static_cast<double>(report.bins[b].count);
    return report;
  }

  std::string format_bins(const std::string& system, const BinnedReport& report, bool header)
  {
    std::string out = header ? "system\tlow\thigh\tsentences\tmean_chrf2pp\n" : "";
    for (const auto& bin : report.bins)
      out += system + "\t" + ratio(bin.low) + "\t" + ratio(bin.high) + "\t" + std::to_string(bin.count) + "\t"
        + score(bin.mean) + "\n";
    out += system + "\tout_of_range\t-\t" + std::to_string(report.out_of_range) + "\tNA\n";
    if (report.missing > 0)
      out += system + "\tmissing\t-\t" + std::to_string(report.missing) + "\tNA\n";
    return out;
  }

  ParallelCorpus load_parallel(const std::filesystem::path& source, const std::optional<std::filesystem::path>& target)
  {
    ParallelCorpus corpus;
    corpus.source = text::read_lines(source);
    if (target)
    {
      corpus.target = text::read_lines(*target);
      check_aligned(corpus.source.size(), corpus.target.size(), target->string());
    }
    return corpus;
  }

  std::vector<Sentence> training_sentences(const ParallelCorpus& corpus, TrainSide side, const Preprocessor& preprocessor)
  {
    std::vector<Sentence> out;
    const auto add = [&](const std::vector<std::string>& lines) {
      for (std::size_t i = 0; i < lines.size(); ++i)
        if (auto sentence = preprocessor(lines[i], i + 1))
          out.push_back(std::move(*sentence));
    };
    if (side != TrainSide::Target)
      add(corpus.source);
    if (side != TrainSide::Source)
    {
      if (corpus.target.empty() && !corpus.source.empty())
        throw ConfigError("pipeline trains on the target side but no target corpus was given");
      add(corpus.target);
    }
    return out;
  }

  ProxyMeasures measure_proxies(const Pipeline& pipeline, const std::vector<Sentence>& train, const std::vector<Sentence>& dev)
  {
    ProxyMeasures measures;
    measures.train_sentences = train.size();
    std::set<std::string> vocab;
    for (const auto& sentence : train)
      for (const auto& analysis : pipeline.segment_sentence(sentence))
        vocab.insert(analysis.morphs.begin(), analysis.morphs.end());

    std::vector<std::string> morphs;
    double richness_sum = 0.0;
    std::size_t tokens = 0;
    for (const auto& sentence : dev)
    {
      std::size_t length = 0;
      for (const auto& analysis : pipeline.segment_sentence(sentence))
      {
        length += analysis.size();
        morphs.insert(morphs.end(), analysis.morphs.begin(), analysis.morphs.end());
      }
      tokens += sentence.tokens.size();
      richness_sum += morphological_richness(sentence.tokens.size(), length);
      measures.max_length = std::max(measures.max_length, length);
    }
    measures.oov_pct = oov_rate(vocab, morphs);
    measures.mean_richness = richness_sum / static_cast<double>(dev.size());
    measures.morphs_per_word = static_cast<double>(morphs.size()) / static_cast<double>(tokens);
    measures.mean_length = static_cast<double>(morphs.size()) / static_cast<double>(dev.size());
    return measures;
  }

  std::vector<CurveRow> learning_curve(const ParallelCorpus& train,
                                       const ParallelCorpus& dev,
                                       const std::vector<CurveInput>& pipelines,
                                       const std::vector<double>& fractions,
                                       std::uint64_t seed,
                                       const Preprocessor& preprocessor)
  {
    std::vector<CurveRow> rows;
    for (const double fraction : fractions)
    {
      const auto indices = subsample_indices(train.source.size(), fraction, seed);
      ParallelCorpus sample;
      for (const auto i : indices)
      {
        sample.source.push_back(train.source[i]);
        if (!train.target.empty())
          sample.target.push_back(train.target[i]);
      }
      for (const auto& [name, recipe] : pipelines)
      {
        const auto train_side = training_sentences(sample, recipe.train_side, preprocessor);
        const auto dev_side = training_sentences(dev, recipe.train_side, preprocessor);
        if (dev_side.empty())
          throw ConfigError("dev corpus is empty after preprocessing");
        const auto pipeline = build_pipeline(recipe, &train_side);
        CurveRow row;
        row.fraction = fraction;
        row.pipeline = name;
        row.proxies = measure_proxies(*pipeline, train_side, dev_side);
        rows.push_back(std::move(row));
      }
    }
    return rows;
  }

  std::string format_curve(const std::vector<CurveRow>& rows)
  {
    std::string out = "fraction\tpipeline\ttrain_sentences\toov_pct\tmean_richness\tmorphs_per_word\tmean_length\tmax_length";
    for (const auto row : category_rows())
      out += "\tchrf_" + std::string(to_string(row));
    out += "\n";
    for (const auto& row : rows)
    {
      const auto& p = row.proxies;
      out += text::format_fixed(row.fraction, 2) + "\t" + row.pipeline + "\t" + std::to_string(p.train_sentences) + "\t"
        + score(p.oov_pct) + "\t" + ratio(p.mean_richness) + "\t" + ratio(p.morphs_per_word) + "\t"
        + ratio(p.mean_length) + "\t" + std::to_string(p.max_length);
      for (std::size_t r = 0; r < category_rows().size(); ++r)
        out += "\t" + (row.chrf ? score(row.chrf->cells[r][0].score) : std::string("NA"));
      out += "\n";
    }
    return out;
  }

  namespace
  {
    nlohmann::json prf_json(const PrfScore& s)
    {
      return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"matches", s.matches},
              {"predicted_morphs", s.predicted}, {"gold_morphs", s.gold}, {"words", s.words}};
    }

    nlohmann::json categories_json(const CategoryScores& scores)
    {
      nlohmann::json out = nlohmann::json::array();
      for (std::size_t r = 0; r < scores.rows.size(); ++r)
        for (std::size_t s = 0; s < scores.systems.size(); ++s)
        {
          const auto& cell = scores.cells[r][s];
          out.push_back({{"category", to_string(scores.rows[r])},
                         {"sentences", scores.counts[r]},
                         {"system", scores.systems[s]},
                         {"chrf2pp", cell.score ? nlohmann::json(*cell.score) : nlohmann::json()},
                         {"rank", cell.rank ? nlohmann::json(cell.rank) : nlohmann::json()}});
        }
      return out;
    }

    nlohmann::json bins_json(const BinnedReport& report)
    {
      nlohmann::json bins = nlohmann::json::array();
      for (const auto& bin : report.bins)
        bins.push_back({{"low", bin.low}, {"high", bin.high}, {"sentences", bin.count},
                        {"mean_chrf2pp", bin.mean ? nlohmann::json(*bin.mean) : nlohmann::json()}});
      return {{"bins", bins}, {"out_of_range", report.out_of_range}, {"missing", report.missing}};
    }

    std::vector<std::string> read_aligned(const std::filesystem::path& path, std::size_t expected)
    {
      auto lines = text::read_lines(path);
      check_aligned(expected, lines.size(), path.string());
      return lines;
    }
  }

  std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir)
  {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
      throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    const auto emit = [&](const std::string& name, const std::string& content) {
      const auto path = out_dir / name;
      text::write_file(path, content);
      written.push_back(path);
    };

    const Preprocessor preprocessor;
    const ArabicRules clitics(config.arabic_scheme);
    nlohmann::json summary;
    summary["seed"] = config.seed;
    summary["fractions"] = config.fractions;
    summary["mcs_mode"] = to_string(config.mcs_mode);
    summary["notes"] = {
      "MT scores are computed only from supplied hypothesis files; NMT training is not part of the harness.",
      "Sentence-level chrF2++ for binned reports uses per-sentence statistics.",
      "Mixed-script words count toward EGY in per-language reports.",
      "Paired bootstrap significance testing is not available.",
    };

    std::vector<CurveInput> recipes;
    for (const auto& [name, path] : config.pipelines)
    {
      auto recipe = load_recipe(path);
      recipe.name = name;
      recipes.push_back({name, std::move(recipe)});
    }

    std::optional<ParallelCorpus> train;
    if (config.train_source)
      train = load_parallel(*config.train_source, config.train_target);

    std::vector<NamedSegmenter> full;
    std::map<std::string, PipelinePtr> full_by_name;
    for (const auto& [name, recipe] : recipes)
    {
      std::optional<std::vector<Sentence>> sentences;
      if (recipe.needs_training())
      {
        if (!train)
          throw ConfigError("pipeline '" + name + "' needs training data but no train.source is configured");
        sentences = training_sentences(*train, recipe.train_side, preprocessor);
      }
      auto pipeline = build_pipeline(recipe, sentences ? &*sentences : nullptr);
      full.emplace_back(name, pipeline);
      full_by_name[name] = pipeline;
    }

    if (config.gold)
    {
      if (!std::filesystem::exists(*config.gold))
        throw ConfigError("gold file " + config.gold->string() + " does not exist");
      const auto rows = run_segmentation_eval(load_gold(*config.gold), full);
      emit("seg_eval.tsv", format_seg_eval(rows));
      emit("diagnostics.tsv", format_diagnostics(rows));
      nlohmann::json seg = nlohmann::json::array();
      for (const auto& row : rows)
      {
        nlohmann::json langs;
        for (const auto& [language, s] : row.emma.by_language)
          langs[std::string(to_string(language))] = prf_json(s);
        langs["All"] = prf_json(row.emma.all);
        seg.push_back({{"system", row.system}, {"emma", langs}});
      }
      summary["segmentation_eval"] = seg;
    }

    std::optional<ParallelCorpus> dev;
    std::vector<SentenceCategory> categories;
    std::vector<std::optional<Sentence>> dev_sentences;
    if (config.dev_source)
    {
      dev = load_parallel(*config.dev_source, config.dev_reference);
      for (std::size_t i = 0; i < dev->source.size(); ++i)
      {
        auto sentence = preprocessor(dev->source[i], i + 1);
        categories.push_back(sentence ? categorize(*sentence, config.mcs_mode, &clitics) : SentenceCategory::Undetermined);
        dev_sentences.push_back(std::move(sentence));
      }
      nlohmann::json counts;
      for (const auto row : category_rows())
        counts[std::string(to_string(row))] =
          std::count_if(categories.begin(), categories.end(), [&](auto c) { return row_contains(row, c); });
      summary["dev_categories"] = counts;
    }

    const bool have_reference = dev && config.dev_reference;
    const auto hypothesis_lines = [&](const std::string& name, double fraction) -> std::optional<std::vector<std::string>> {
      const auto path = config.hypothesis(name, fraction);
      if (!path)
        return std::nullopt;
      if (!have_reference)
        throw ConfigError("hypothesis files need dev.source and dev.reference");
      return read_aligned(*path, dev->source.size());
    };

    if (train && dev && !recipes.empty())
    {
      auto rows = learning_curve(*train, *dev, recipes, config.fractions, config.seed, preprocessor);
      bool any_missing = false;
      for (auto& row : rows)
      {
        if (auto lines = hypothesis_lines(row.pipeline, row.fraction))
          row.chrf = eval_by_category({{row.pipeline, *lines}}, dev->target, categories);
        else
          any_missing = true;
      }
      std::string table = format_curve(rows);
      if (any_missing)
        table = "# chrF columns are NA where no hypothesis file was supplied; proxies only\n" + table;
      emit("learning_curve.tsv", table);

      nlohmann::json curve = nlohmann::json::array();
      for (const auto& row : rows)
      {
        const auto& p = row.proxies;
        curve.push_back({{"fraction", row.fraction},
                         {"pipeline", row.pipeline},
                         {"train_sentences", p.train_sentences},
                         {"oov_pct", p.oov_pct},
                         {"mean_richness", p.mean_richness},
                         {"morphs_per_word", p.morphs_per_word},
                         {"mean_length", p.mean_length},
                         {"max_length", p.max_length},
                         {"chrf", row.chrf ? categories_json(*row.chrf) : nlohmann::json()}});
      }
      summary["learning_curve"] = curve;
    }

    if (have_reference)
    {
      std::string table;
      nlohmann::json per_fraction = nlohmann::json::array();
      for (const double fraction : config.fractions)
      {
        std::vector<NamedLines> systems;
        for (const auto& [name, recipe] : recipes)
          if (auto lines = hypothesis_lines(name, fraction))
            systems.emplace_back(name, std::move(*lines));
        if (systems.empty())
          continue;
        const auto scores = eval_by_category(systems, dev->target, categories);
        for (const auto& line : text::split_lines(format_categories(scores)))
        {
          if (table.empty())
            table = "fraction\t" + line + "\n";
          else if (line.rfind("category\t", 0) != 0)
            table += text::format_fixed(fraction, 2) + "\t" + line + "\n";
        }
        per_fraction.push_back({{"fraction", fraction}, {"scores", categories_json(scores)}});
      }
      if (!table.empty())
      {
        emit("categories.tsv", table);
        summary["categories"] = per_fraction;
      }

      if (!config.selection.empty())
      {
        std::map<SentenceCategory, std::vector<std::string>> routes;
        for (const auto& [category, path] : config.selection)
          routes[category] = read_aligned(path, dev->source.size());
        const auto result = system_selection(routes, dev->target, categories);
        std::string out = "category\tsentences\tchrf2pp\n";
        for (std::size_t r = 0; r < result.by_category.rows.size(); ++r)
          out += std::string(to_string(result.by_category.rows[r])) + "\t" + std::to_string(result.by_category.counts[r])
            + "\t" + score(result.by_category.cells[r][0].score) + "\n";
        emit("selection.tsv", out);
        summary["selection"] = {{"chrf2pp", result.overall.score}, {"by_category", categories_json(result.by_category)}};
      }

      // Binned reports on the full-data hypotheses.
      const double top = config.fractions.back();
      std::string richness_table, english_table;
      nlohmann::json bins;
      const std::string richness_name = !config.richness_pipeline.empty() ? config.richness_pipeline
        : !recipes.empty()                                                 ? recipes.front().name
                                                                           : std::string();
      std::vector<std::optional<double>> richness(dev->source.size()), english(dev->source.size());
      for (std::size_t i = 0; i < dev_sentences.size(); ++i)
      {
        if (!dev_sentences[i])
          continue;
        if (const auto share = english_percentage(*dev_sentences[i]))
          english[i] = 100.0 * *share;
        if (!richness_name.empty())
        {
          std::size_t morphs = 0;
          for (const auto& analysis : full_by_name.at(richness_name)->segment_sentence(*dev_sentences[i]))
            morphs += analysis.size();
          richness[i] = morphological_richness(dev_sentences[i]->tokens.size(), morphs);
        }
      }
      for (const auto& [name, recipe] : recipes)
      {
        const auto lines = hypothesis_lines(name, top);
        if (!lines)
          continue;
        const auto sentence_scores = chrf_sentences(*lines, dev->target);
        const auto by_richness = binned_report(sentence_scores, richness, config.richness_bins);
        const auto by_english = binned_report(sentence_scores, english, config.english_bins);
        richness_table += format_bins(name, by_richness, richness_table.empty());
        english_table += format_bins(name, by_english, english_table.empty());
        bins[name] = {{"richness", bins_json(by_richness)}, {"english_pct", bins_json(by_english)}};
      }
      if (!richness_table.empty())
      {
        emit("bins_richness.tsv", "# richness under pipeline " + richness_name + "\n" + richness_table);
        emit("bins_english.tsv", english_table);
        summary["bins"] = bins;
      }
    }

    emit("summary.json", summary.dump(2) + "\n");
    return written;
  }

}
