#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cswseg/chrf.hpp"
#include "cswseg/corpus.hpp"
#include "cswseg/emma.hpp"
#include "cswseg/experiment.hpp"
#include "cswseg/gold.hpp"
#include "cswseg/pipeline.hpp"
#include "cswseg/seg_metrics.hpp"

namespace cswseg
{

  // Segmenter comparison against gold analyses.

  struct SegEvalRow
  {
    std::string system;
    EmmaReport emma;
    SegDiagnostics diagnostics;
  };

  using NamedSegmenter = std::pair<std::string, SegmenterPtr>;

  // One row per system, preceded by the identity baseline "raw".
  std::vector<SegEvalRow> run_segmentation_eval(const std::vector<GoldSentence>& gold,
                                                const std::vector<NamedSegmenter>& systems);

  std::string format_seg_eval(const std::vector<SegEvalRow>& rows);
  std::string format_diagnostics(const std::vector<SegEvalRow>& rows);

  // MT scoring split by sentence category.

  // Report rows: All, MonoEGY, MonoEN, CS (includes MCS), MCS, Undetermined.
  enum class CategoryRow
  {
    All,
    MonoEGY,
    MonoEN,
    CS,
    MCS,
    Undetermined,
  };

  std::string_view to_string(CategoryRow row);
  const std::vector<CategoryRow>& category_rows();
  bool row_contains(CategoryRow row, SentenceCategory category);

  struct CategoryCell
  {
    std::optional<double> score;  // absent for empty categories
    std::size_t rank = 0;         // 0 when unranked
  };

  struct CategoryScores
  {
    std::vector<std::string> systems;
    std::vector<CategoryRow> rows;
    std::vector<std::size_t> counts;             // per row
    std::vector<std::vector<CategoryCell>> cells;  // [row][system]
  };

  using NamedLines = std::pair<std::string, std::vector<std::string>>;

  // Corpus-level chrF2++ per category subset. Ranks (1 = best, equal ranks on
  // exact ties) are filled when at least two systems are compared. Throws
  // AlignmentError naming the first line without a counterpart.
  CategoryScores eval_by_category(const std::vector<NamedLines>& hypotheses,
                                  const std::vector<std::string>& references,
                                  const std::vector<SentenceCategory>& categories,
                                  const ChrfParams& params = {});

  std::string format_categories(const CategoryScores& scores);

  // Competition ranking, higher is better.
  std::vector<std::size_t> competition_ranks(const std::vector<std::optional<double>>& scores);

  // Per-sentence system selection.

  struct SelectionResult
  {
    std::vector<std::string> composite;
    ChrfReport overall;
    CategoryScores by_category;
  };

  // MCS sentences use the CS route unless MCS is routed itself. A category
  // without a route is only an error when one of its sentences occurs.
  SelectionResult system_selection(const std::map<SentenceCategory, std::vector<std::string>>& routes,
                                   const std::vector<std::string>& references,
                                   const std::vector<SentenceCategory>& categories,
                                   const ChrfParams& params = {});

  // Binned per-sentence scores.

  struct Bin
  {
    double low = 0.0;
    double high = 0.0;
    std::size_t count = 0;
    std::optional<double> mean;
  };

  struct BinnedReport
  {
    std::vector<Bin> bins;
    std::size_t out_of_range = 0;
    std::size_t missing = 0;  // sentences without a feature value
  };

  // Half-open bins [e_i, e_i+1); the last bin also includes its upper edge.
  // Throws ArgumentError on fewer than two or non-increasing edges.
  BinnedReport binned_report(const std::vector<double>& scores,
                             const std::vector<std::optional<double>>& features,
                             const std::vector<double>& edges);

  std::string format_bins(const std::string& system, const BinnedReport& report, bool header = true);

  // Learning curve.

  struct ParallelCorpus
  {
    std::vector<std::string> source;
    std::vector<std::string> target;
  };

  // Reads both sides; throws AlignmentError when line counts differ. An
  // empty target path gives a source-only corpus.
  ParallelCorpus load_parallel(const std::filesystem::path& source, const std::optional<std::filesystem::path>& target);

  // Preprocessed training sentences for a recipe's side.
  std::vector<Sentence> training_sentences(const ParallelCorpus& corpus, TrainSide side, const Preprocessor& preprocessor);

  struct ProxyMeasures
  {
    std::size_t train_sentences = 0;
    double oov_pct = 0.0;
    double mean_richness = 0.0;
    double morphs_per_word = 0.0;
    double mean_length = 0.0;
    std::size_t max_length = 0;
  };

  // Segmentation-side measurements of `pipeline` on the dev sentences, with
  // the training vocabulary taken from the segmented training sentences.
  ProxyMeasures measure_proxies(const Pipeline& pipeline,
                                const std::vector<Sentence>& train,
                                const std::vector<Sentence>& dev);

  struct CurveRow
  {
    double fraction = 1.0;
    std::string pipeline;
    ProxyMeasures proxies;
    std::optional<CategoryScores> chrf;
  };

  struct CurveInput
  {
    std::string name;
    PipelineRecipe recipe;
  };

  // For each fraction: subsample the pairs, retrain every pipeline on the
  // subsample and measure it on the dev side matching its training side.
  std::vector<CurveRow> learning_curve(const ParallelCorpus& train,
                                       const ParallelCorpus& dev,
                                       const std::vector<CurveInput>& pipelines,
                                       const std::vector<double>& fractions,
                                       std::uint64_t seed,
                                       const Preprocessor& preprocessor = Preprocessor());

  std::string format_curve(const std::vector<CurveRow>& rows);

  // Full harness run: reads every input named by the config, writes reports
  // into out_dir and returns the list of files written.
  std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}
