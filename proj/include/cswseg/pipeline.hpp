#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cswseg/bpe.hpp"
#include "cswseg/corpus.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  using Chain = std::vector<SegmenterPtr>;

  // Stage 1 segments the token; each later stage segments every morph of the
  // previous stage independently, so earlier boundaries are never crossed.
  Analysis compose(const Chain& stages, std::string_view token);

  using Router = std::map<Script, SegmenterPtr>;

  // Segments each token with the segmenter registered for its script class;
  // unrouted classes are left whole.
  std::vector<Analysis> route(const Sentence& sentence, const Router& router);

  // A default chain plus optional per-script chains that override it.
  class Pipeline : public Segmenter
  {
  public:
    explicit Pipeline(Chain stages, std::map<Script, Chain> routes = {}, std::string name = "pipeline");

    Analysis segment(std::string_view token) const override;
    std::string normalize(std::string_view token) const override;
    std::string describe() const override;

    std::vector<Analysis> segment_sentence(const Sentence& sentence) const;

    const Chain& chain_for(Script script) const;
    const std::string& name() const { return _name; }

  private:
    Chain _stages;
    std::map<Script, Chain> _routes;
    std::string _name;
  };

  using PipelinePtr = std::shared_ptr<const Pipeline>;

  // One stage of a pipeline manifest, either trainable from data or loaded.
  struct StageSpec
  {
    enum class Kind
    {
      Identity,
      File,
      Bpe,
      Mdl,
      ArabicRules,
      EnglishRules,
    };

    Kind kind = Kind::Identity;
    std::filesystem::path file;
    std::map<std::string, std::string> options;

    bool needs_training() const { return kind == Kind::Bpe || kind == Kind::Mdl; }
    std::string to_string() const;
  };

  StageSpec parse_stage_spec(std::string_view text, const std::filesystem::path& base_dir = {});

  enum class TrainSide
  {
    Source,
    Target,
    Joint,
  };

  // Manifest grammar (one directive per line, '#' starts a comment line):
  //   name <text>
  //   train-on source|target|joint
  //   stage <spec>
  //   route arabic|latin|numeric|punct|mixed <spec> [<spec> ...]
  // where <spec> is identity, file:<path>, bpe[:vocab=N,marker=M],
  // mdl[:F=f,d=log|ones|none,a=recursive|viterbi,seed=N,cap=N],
  // ar-rules[:scheme=atb|d3] or en-rules.
  struct PipelineRecipe
  {
    std::string name = "pipeline";
    TrainSide train_side = TrainSide::Source;
    std::vector<StageSpec> stages;
    std::map<Script, std::vector<StageSpec>> routes;

    bool needs_training() const;
  };

  PipelineRecipe parse_recipe(std::string_view content, const std::filesystem::path& base_dir = {});
  PipelineRecipe load_recipe(const std::filesystem::path& path);

  // Builds the pipeline, training BPE/MDL stages on `training` (the tokens
  // each chain is responsible for, as segmented by the stages before it).
  // Throws ConfigError if a stage needs training and no corpus is given.
  PipelinePtr build_pipeline(const PipelineRecipe& recipe, const std::vector<Sentence>* training = nullptr);

  // Hash-format rendering: words separated by spaces, morphs by '#'.
  std::string render_hash(const std::vector<Analysis>& analyses);
  // Marker format: flat morph stream, non-final morphs end with "@@".
  std::string render_marker(const std::vector<Analysis>& analyses);
  // Inverse of render_marker; returns the escaped, space-joined words.
  std::string desegment_marker(std::string_view line);

}
