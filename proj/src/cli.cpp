#include "cswseg/cli.hpp"

#include <exception>
#include <set>
#include <thread>
#include <type_traits>

#include <CLI11.hpp>

#include "cswseg/arabic_rules.hpp"
#include "cswseg/bpe.hpp"
#include "cswseg/chrf.hpp"
#include "cswseg/corpus.hpp"
#include "cswseg/emma.hpp"
#include "cswseg/english_rules.hpp"
#include "cswseg/errors.hpp"
#include "cswseg/experiment.hpp"
#include "cswseg/gold.hpp"
#include "cswseg/harness.hpp"
#include "cswseg/mdl.hpp"
#include "cswseg/model_io.hpp"
#include "cswseg/pipeline.hpp"
#include "cswseg/seg_metrics.hpp"
#include "cswseg/text_io.hpp"
#include "cswseg/unicode.hpp"

namespace cswseg
{

  namespace
  {
    // Applies `fn` to every index, optionally on several threads; results keep
    // input order and the lowest-index exception wins.
    template <typename Fn>
    auto parallel_map(std::size_t count, std::size_t threads, Fn fn)
    {
      std::vector<std::invoke_result_t<Fn, std::size_t>> results(count);
      threads = std::max<std::size_t>(1, std::min(threads, count));
      if (threads == 1)
      {
        for (std::size_t i = 0; i < count; ++i)
          results[i] = fn(i);
        return results;
      }
      std::vector<std::exception_ptr> errors(count);
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < count; i += threads)
          {
            try
            {
              results[i] = fn(i);
            }
            catch (...)
            {
              errors[i] = std::current_exception();
            }
          }
        });
      for (auto& thread : pool)
        thread.join();
      for (const auto& error : errors)
        if (error)
          std::rethrow_exception(error);
      return results;
    }

    void write_output(const std::string& path, const std::string& content, std::ostream& out)
    {
      if (path.empty() || path == "-")
        out << content;
      else
        text::write_file(path, content);
    }

    std::string join_lines(const std::vector<std::string>& lines)
    {
      std::string out;
      for (const auto& line : lines)
      {
        out += line;
        out.push_back('\n');
      }
      return out;
    }

    std::vector<Sentence> read_sentences(const std::vector<std::string>& paths)
    {
      std::vector<Sentence> sentences;
      for (const auto& path : paths)
      {
        const auto lines = text::read_lines(path);
        for (std::size_t i = 0; i < lines.size(); ++i)
        {
          auto sentence = parse_sentence(lines[i], i + 1);
          if (!sentence.tokens.empty())
            sentences.push_back(std::move(sentence));
        }
      }
      return sentences;
    }

    struct SegmenterSource
    {
      std::string model;
      std::string pipeline;
      std::vector<std::string> train;

      PipelinePtr load() const
      {
        if (model.empty() == pipeline.empty())
          throw ArgumentError("give exactly one of --model or --pipeline");
        if (!model.empty())
          return std::make_shared<Pipeline>(Chain{load_model(model)}, std::map<Script, Chain>{}, model);
        const auto recipe = load_recipe(pipeline);
        if (recipe.needs_training())
        {
          if (train.empty())
            throw ArgumentError("pipeline '" + recipe.name + "' has trainable stages; pass --train");
          const auto sentences = read_sentences(train);
          return build_pipeline(recipe, &sentences);
        }
        return build_pipeline(recipe);
      }
    };

    std::string language_name(Language language)
    {
      return std::string(to_string(language));
    }

    std::vector<GoldEntry> read_prediction(const std::string& path)
    {
      const auto content = text::read_file(path);
      if (content.find('\t') != std::string::npos)
        return flatten(parse_gold(content, path));
      std::vector<GoldEntry> entries;
      const auto lines = text::split_lines(content);
      for (std::size_t i = 0; i < lines.size(); ++i)
        for (const auto& word : unicode::split_whitespace(lines[i]))
        {
          auto analysis = parse_hash_string(word);
          for (const auto& morph : analysis.morphs)
            if (morph.empty())
              throw ValidationError(path + ":" + std::to_string(i + 1) + ": empty morph in '" + word + "'");
          entries.push_back({Token::make(analysis.surface()), std::move(analysis)});
        }
      return entries;
    }

    std::string file_label(const std::string& path)
    {
      const auto stem = std::filesystem::path(path).filename().string();
      return stem.empty() ? path : stem;
    }
  }

  int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Subword segmentation and evaluation toolkit for code-switched Egyptian Arabic-English text", "cswseg"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "Clean and tokenize raw text, one sentence per line");
    std::string pre_in, pre_out;
    std::vector<std::string> pre_markup;
    bool pre_keep_empty = false, pre_keep_urls = false, pre_keep_emoticons = false, pre_no_arabic = false;
    std::size_t pre_threads = 1;
    preprocess->add_option("--in", pre_in, "Raw input file")->required();
    preprocess->add_option("--out", pre_out, "Output file (default stdout)");
    preprocess->add_option("--markup", pre_markup, "Markup regex to strip (repeatable; replaces the default)");
    preprocess->add_flag("--keep-empty", pre_keep_empty, "Write an empty line for skipped input lines");
    preprocess->add_flag("--keep-urls", pre_keep_urls, "Do not remove URLs");
    preprocess->add_flag("--keep-emoticons", pre_keep_emoticons, "Do not remove emoticons");
    preprocess->add_flag("--no-arabic-normalization", pre_no_arabic, "Skip the ى/أ letter normalization");
    preprocess->add_option("--threads", pre_threads, "Worker threads")->check(CLI::PositiveNumber);

    // train
    auto* train = app.add_subcommand("train", "Train or export a segmentation model");
    std::string method, train_out, marker = std::string(BpeModel::default_marker), dampening = "log",
                                       algorithm = "recursive", scheme = "atb";
    std::vector<std::string> train_in;
    std::size_t vocab = BpeModel::default_vocab_size, cap = 0, epochs = 50;
    double finish = 0.003;
    std::uint64_t train_seed = 0;
    train->add_option("--method", method, "bpe, mdl, ar-rules or en-rules")
      ->required()
      ->check(CLI::IsMember({"bpe", "mdl", "ar-rules", "en-rules"}));
    train->add_option("--in", train_in, "Preprocessed training text (repeatable; joint training)");
    train->add_option("--out", train_out, "Model file")->required();
    train->add_option("--vocab", vocab, "BPE vocabulary size");
    train->add_option("--marker", marker, "BPE end-of-word marker");
    train->add_option("-F,--F", finish, "MDL finish threshold (bits per word type)");
    train->add_option("-d,--d", dampening, "MDL count dampening: log, ones, none");
    train->add_option("-a,--a", algorithm, "MDL algorithm: recursive, viterbi");
    train->add_option("--seed", train_seed, "MDL shuffle seed");
    train->add_option("--cap", cap, "Approximate MDL lexicon cap (0 = off)");
    train->add_option("--epochs", epochs, "MDL epoch limit");
    train->add_option("--scheme", scheme, "Arabic scheme: atb or d3");

    // segment
    auto* segment = app.add_subcommand("segment", "Segment preprocessed text");
    SegmenterSource seg_source;
    std::string seg_in, seg_out, seg_format = "hash";
    bool seg_buckwalter = false;
    std::size_t seg_threads = 1;
    segment->add_option("--model", seg_source.model, "Model file");
    segment->add_option("--pipeline", seg_source.pipeline, "Pipeline manifest");
    segment->add_option("--train", seg_source.train, "Training text for trainable pipeline stages (repeatable)");
    segment->add_option("--in", seg_in, "Preprocessed input")->required();
    segment->add_option("--out", seg_out, "Output file (default stdout)");
    segment->add_option("--format", seg_format, "hash or marker")->check(CLI::IsMember({"hash", "marker"}));
    segment->add_flag("--buckwalter", seg_buckwalter, "Transliterate Arabic output to Buckwalter");
    segment->add_option("--threads", seg_threads, "Worker threads")->check(CLI::PositiveNumber);

    // desegment
    auto* desegment = app.add_subcommand("desegment", "Undo marker-format segmentation");
    std::string deseg_in, deseg_out;
    desegment->add_option("--in", deseg_in, "Marker-format input")->required();
    desegment->add_option("--out", deseg_out, "Output file (default stdout)");

    // eval-seg
    auto* eval_seg = app.add_subcommand("eval-seg", "EMMA and over/under-segmentation against gold");
    SegmenterSource eval_source;
    std::string gold_path, pred_path;
    bool by_lang = false, show_diagnostics = false;
    eval_seg->add_option("--gold", gold_path, "Gold TSV")->required();
    eval_seg->add_option("--pred", pred_path, "Predictions: hash-format lines or gold-format TSV");
    eval_seg->add_option("--model", eval_source.model, "Segment the gold words with this model");
    eval_seg->add_option("--pipeline", eval_source.pipeline, "Segment the gold words with this pipeline");
    eval_seg->add_option("--train", eval_source.train, "Training text for trainable pipeline stages");
    eval_seg->add_flag("--by-lang", by_lang, "Add EGY and EN rows");
    eval_seg->add_flag("--diagnostics", show_diagnostics, "Print under/over segmentation counts");

    // eval-mt
    auto* eval_mt = app.add_subcommand("eval-mt", "chrF2++ of hypothesis files");
    std::vector<std::string> hyp_paths;
    std::string ref_path, src_path, mcs_mode = "mixed-script", mt_scheme = "atb";
    bool by_category = false, sentence_scores = false, components = false, average_f = false;
    std::size_t mt_threads = 1;
    eval_mt->add_option("--hyp", hyp_paths, "Hypothesis file (repeatable to compare systems)")->required();
    eval_mt->add_option("--ref", ref_path, "Reference file")->required();
    eval_mt->add_option("--src", src_path, "Source file for sentence categories");
    eval_mt->add_flag("--by-category", by_category, "Score per sentence category (needs --src)");
    eval_mt->add_option("--mcs-mode", mcs_mode, "mixed-script or clitic-adjacent")
      ->check(CLI::IsMember({"mixed-script", "clitic-adjacent"}));
    eval_mt->add_option("--scheme", mt_scheme, "Clitic inventory for clitic-adjacent MCS: atb or d3");
    eval_mt->add_flag("--sentence", sentence_scores, "Print one sentence-level score per line");
    eval_mt->add_flag("--components", components, "Print per-order n-gram statistics");
    eval_mt->add_flag("--average-f", average_f, "Average per-order F scores instead of precision/recall");
    eval_mt->add_option("--threads", mt_threads, "Worker threads")->check(CLI::PositiveNumber);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the experiment harness");
    std::string config_path, report_dir = "reports";
    analyze->add_option("--config", config_path, "Experiment config")->required();
    analyze->add_option("--out", report_dir, "Report directory");

    // stats
    auto* stats = app.add_subcommand("stats", "Gold corpus statistics");
    std::string stats_gold;
    stats->add_option("--gold", stats_gold, "Gold TSV")->required();

    // subsample
    auto* subsample_cmd = app.add_subcommand("subsample", "Seeded sentence-level sample of aligned files");
    std::vector<std::string> sub_in, sub_out;
    double fraction = 1.0;
    std::uint64_t sub_seed = 1;
    subsample_cmd->add_option("--in", sub_in, "Input file (repeatable; files are sampled in parallel)")->required();
    subsample_cmd->add_option("--out", sub_out, "Output file per input (default stdout for one input)");
    subsample_cmd->add_option("--fraction", fraction, "Fraction in (0, 1]")->required();
    subsample_cmd->add_option("--seed", sub_seed, "Sampling seed");

    try
    {
      app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
      return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
      return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(ExitCode::Argument);
    }

    try
    {
      if (preprocess->parsed())
      {
        PreprocessOptions options;
        if (!pre_markup.empty())
          options.markup_patterns = pre_markup;
        options.remove_urls = !pre_keep_urls;
        options.remove_emoticons = !pre_keep_emoticons;
        options.normalize_arabic = !pre_no_arabic;
        const Preprocessor preprocessor(options);
        const auto lines = text::read_lines(pre_in);
        const auto rendered = parallel_map(lines.size(), pre_threads, [&](std::size_t i) {
          const auto sentence = preprocessor(lines[i], i + 1);
          return sentence ? render(*sentence) : std::string();
        });
        std::vector<std::string> kept;
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < rendered.size(); ++i)
        {
          if (rendered[i].empty())
          {
            ++skipped;
            if (!pre_keep_empty)
              continue;
          }
          kept.push_back(rendered[i]);
        }
        write_output(pre_out, join_lines(kept), out);
        if (skipped > 0)
          err << skipped << " line(s) empty after preprocessing" << (pre_keep_empty ? " (kept as blank lines)" : " (dropped)")
              << "\n";
      }
      else if (train->parsed())
      {
        SegmenterPtr model;
        if (method == "ar-rules")
          model = std::make_shared<ArabicRules>(arabic_scheme_from_string(scheme));
        else if (method == "en-rules")
          model = std::make_shared<EnglishRules>();
        else
        {
          if (train_in.empty())
            throw ArgumentError("--in is required for --method " + method);
          WordCounts counts;
          for (const auto& sentence : read_sentences(train_in))
            for (const auto& token : sentence.tokens)
              ++counts[token.surface];
          if (counts.empty())
            throw ValidationError("training text contains no words");
          if (method == "bpe")
          {
            auto bpe = BpeModel::train(counts, vocab, marker);
            err << "learned " << bpe.merges().size() << " merges\n";
            model = std::make_shared<BpeModel>(std::move(bpe));
          }
          else
          {
            MdlParams params;
            params.finish_threshold = finish;
            params.dampening = dampening_from_string(dampening);
            params.algorithm = mdl_algorithm_from_string(algorithm);
            params.seed = train_seed;
            params.lexicon_cap = cap;
            params.max_epochs = epochs;
            auto result = train_mdl(counts, params);
            err << "epochs " << result.epoch_costs.size() << ", cost " << text::format_fixed(result.baseline_cost, 1)
                << " -> " << text::format_fixed(result.model.total_cost(), 1) << " bits, lexicon "
                << result.model.lexicon().size() << " morphs\n";
            model = std::make_shared<MdlModel>(std::move(result.model));
          }
        }
        save_model(*model, train_out);
      }
      else if (segment->parsed())
      {
        const auto pipeline = seg_source.load();
        const auto lines = text::read_lines(seg_in);
        const bool marker_format = seg_format == "marker";
        const auto rendered = parallel_map(lines.size(), seg_threads, [&](std::size_t i) {
          const auto sentence = parse_sentence(lines[i], i + 1);
          const auto analyses = pipeline->segment_sentence(sentence);
          auto line = marker_format ? render_marker(analyses) : render_hash(analyses);
          return seg_buckwalter ? unicode::to_buckwalter(line) : line;
        });
        write_output(seg_out, join_lines(rendered), out);
      }
      else if (desegment->parsed())
      {
        const auto lines = text::read_lines(deseg_in);
        std::vector<std::string> words;
        for (const auto& line : lines)
          words.push_back(desegment_marker(line));
        write_output(deseg_out, join_lines(words), out);
      }
      else if (eval_seg->parsed())
      {
        const auto gold = flatten(load_gold(gold_path));
        if (gold.empty())
          throw ValidationError("gold file has no words");
        std::vector<Analysis> reference, predicted;
        std::vector<Language> languages;
        for (const auto& entry : gold)
        {
          reference.push_back(entry.analysis);
          languages.push_back(language_of(entry.word.script));
        }
        const bool from_file = !pred_path.empty();
        if (from_file == !(eval_source.model.empty() && eval_source.pipeline.empty()))
          throw ArgumentError("give --pred, or one of --model / --pipeline");
        if (from_file)
        {
          for (auto& entry : read_prediction(pred_path))
            predicted.push_back(std::move(entry.analysis));
          if (predicted.size() != reference.size())
            throw AlignmentError("prediction has " + std::to_string(predicted.size()) + " words but gold has "
                                 + std::to_string(reference.size()));
        }
        else
        {
          const auto pipeline = eval_source.load();
          for (const auto& entry : gold)
            predicted.push_back(pipeline->segment(entry.word.surface));
        }
        const auto report = emma(predicted, reference, languages);
        std::string table = "language\tprecision\trecall\tf1\tpredicted_morphs\tgold_morphs\twords\n";
        const auto row = [&](const std::string& name, const PrfScore& s) {
          table += name + "\t" + text::format_fixed(s.precision, 3) + "\t" + text::format_fixed(s.recall, 3) + "\t"
            + text::format_fixed(s.f1, 3) + "\t" + std::to_string(s.predicted) + "\t" + std::to_string(s.gold) + "\t"
            + std::to_string(s.words) + "\n";
        };
        if (by_lang)
          for (const auto language : {Language::EGY, Language::EN, Language::Other})
            if (report.by_language.count(language) || language != Language::Other)
              row(language_name(language), report.language(language));
        row("All", report.all);
        out << table;
        if (show_diagnostics)
        {
          const auto diag = seg_diagnostics(predicted, reference, languages);
          out << "language\tunder\tover\tcorrect\tcorrect_seg\tcorrect_unseg\ttotal\n";
          const auto line = [&](const std::string& name, const DiagnosticCounts& c) {
            out << name << "\t" << c.under << "\t" << c.over << "\t" << c.correct << "\t" << c.correct_seg << "\t"
                << c.correct_unseg << "\t" << c.total() << "\n";
          };
          for (const auto& [language, counts] : diag.by_language)
            line(language_name(language), counts);
          line("All", diag.all);
        }
        out << "EMMA F1 " << text::format_fixed(report.all.f1, 3) << "\n";
      }
      else if (eval_mt->parsed())
      {
        ChrfParams params;
        params.average_f = average_f;
        const auto references = text::read_lines(ref_path);
        std::vector<NamedLines> systems;
        std::set<std::string> labels;
        for (const auto& path : hyp_paths)
        {
          auto label = file_label(path);
          while (labels.count(label))
            label += "'";
          labels.insert(label);
          systems.emplace_back(label, text::read_lines(path));
          if (systems.back().second.size() != references.size())
            throw AlignmentError(path + " has " + std::to_string(systems.back().second.size()) + " lines but the reference has "
                                 + std::to_string(references.size()) + "; first unmatched line is "
                                 + std::to_string(std::min(systems.back().second.size(), references.size()) + 1));
        }
        if (references.empty())
          throw ValidationError("reference file is empty");

        if (by_category)
        {
          if (src_path.empty())
            throw ArgumentError("--by-category needs --src");
          const auto sources = text::read_lines(src_path);
          if (sources.size() != references.size())
            throw AlignmentError("source has " + std::to_string(sources.size()) + " lines but the reference has "
                                 + std::to_string(references.size()));
          const Preprocessor preprocessor;
          const ArabicRules clitics(arabic_scheme_from_string(mt_scheme));
          const auto mode = mcs_mode_from_string(mcs_mode);
          std::vector<SentenceCategory> categories;
          for (std::size_t i = 0; i < sources.size(); ++i)
          {
            const auto sentence = preprocessor(sources[i], i + 1);
            categories.push_back(sentence ? categorize(*sentence, mode, &clitics) : SentenceCategory::Undetermined);
          }
          out << format_categories(eval_by_category(systems, references, categories, params));
        }
        else
        {
          for (const auto& [label, lines] : systems)
          {
            const auto sentence_stats = parallel_map(lines.size(), mt_threads, [&](std::size_t i) {
              return chrf_sentence_stats(lines[i], references[i], params);
            });
            ChrfStats total;
            for (const auto& s : sentence_stats)
              total += s;
            const auto report = chrf_report(total, params);
            std::size_t empty_refs = 0;
            for (const auto& ref : references)
              if (unicode::split_whitespace(ref).empty())
                ++empty_refs;
            if (empty_refs > 0)
              err << "warning: " << empty_refs << " empty reference line(s); their n-gram orders are skipped\n";
            if (sentence_scores)
              for (const auto& s : sentence_stats)
                out << text::format_fixed(chrf_score(s, params), 4) << "\n";
            if (components)
            {
              out << "order\thyp\tref\tmatches\tprecision\trecall\tf\n";
              for (const auto& c : report.components)
                out << (c.word ? "word" : "char") << c.n << "\t" << c.hyp << "\t" << c.ref << "\t" << c.matches << "\t"
                    << text::format_fixed(c.precision, 3) << "\t" << text::format_fixed(c.recall, 3) << "\t"
                    << text::format_fixed(c.f, 3) << "\n";
            }
            out << (systems.size() > 1 ? label + "\t" : std::string()) << "chrF2++\t" << text::format_fixed(report.score, 1)
                << "\n";
          }
        }
      }
      else if (analyze->parsed())
      {
        const auto config = load_experiment(config_path);
        for (const auto& path : run_experiment(config, report_dir))
          err << "wrote " << path.string() << "\n";
      }
      else if (stats->parsed())
      {
        out << format_stats(corpus_stats(flatten(load_gold(stats_gold))));
      }
      else if (subsample_cmd->parsed())
      {
        if (!sub_out.empty() && sub_out.size() != sub_in.size())
          throw ArgumentError("give one --out per --in");
        if (sub_out.empty() && sub_in.size() > 1)
          throw ArgumentError("several inputs need one --out each");
        // Lines keep their exact bytes, terminators included.
        std::vector<std::vector<std::string>> files;
        for (const auto& path : sub_in)
        {
          const auto content = text::read_file(path);
          std::vector<std::string> lines;
          std::size_t start = 0;
          while (start < content.size())
          {
            auto end = content.find('\n', start);
            end = end == std::string::npos ? content.size() : end + 1;
            lines.push_back(content.substr(start, end - start));
            start = end;
          }
          if (!files.empty() && lines.size() != files.front().size())
            throw AlignmentError(path + " has " + std::to_string(lines.size()) + " lines but " + sub_in.front() + " has "
                                 + std::to_string(files.front().size()));
          files.push_back(std::move(lines));
        }
        const auto indices = subsample_indices(files.front().size(), fraction, sub_seed);
        for (std::size_t f = 0; f < files.size(); ++f)
        {
          std::string content;
          for (const auto i : indices)
            content += files[f][i];
          write_output(sub_out.empty() ? std::string() : sub_out[f], content, out);
        }
      }
      return static_cast<int>(ExitCode::Success);
    }
    catch (const Error& e)
    {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(e.exit_code());
    }
    catch (const std::bad_alloc&)
    {
      err << "error: out of memory\n";
      return static_cast<int>(ExitCode::Io);
    }
    catch (const std::exception& e)
    {
      err << "error: " << e.what() << "\n";
      return static_cast<int>(ExitCode::Validation);
    }
  }

}
