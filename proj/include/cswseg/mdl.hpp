#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cswseg/bpe.hpp"
#include "cswseg/segmenter.hpp"

namespace cswseg
{

  // Word-count dampening applied before training:
  // log -> 1 + ln(count), ones -> 1, none -> count.
  enum class Dampening
  {
    Log,
    Ones,
    None,
  };

  enum class MdlAlgorithm
  {
    Recursive,
    Viterbi,
  };

  std::string_view to_string(Dampening dampening);
  std::string_view to_string(MdlAlgorithm algorithm);
  Dampening dampening_from_string(std::string_view name);
  MdlAlgorithm mdl_algorithm_from_string(std::string_view name);

  double dampen(std::uint64_t count, Dampening dampening);

  struct MdlParams
  {
    // Training stops once an epoch improves the cost by less than this many
    // bits per word type.
    double finish_threshold = 0.003;
    Dampening dampening = Dampening::Log;
    MdlAlgorithm algorithm = MdlAlgorithm::Recursive;
    std::uint64_t seed = 0;
    std::size_t max_epochs = 50;
    // Approximate lexicon cap; 0 disables pruning.
    std::size_t lexicon_cap = 0;
  };

  class MdlModel : public Segmenter
  {
  public:
    // `lexicon` maps morphs to their (dampened) corpus weight;
    // `word_weight` is the total dampened weight of the training words.
    MdlModel(std::map<std::string, double> lexicon, MdlParams params, double word_weight);

    Analysis segment(std::string_view token) const override;
    std::string describe() const override;

    const std::map<std::string, double>& lexicon() const { return _lexicon; }
    const MdlParams& params() const { return _params; }
    double word_weight() const { return _word_weight; }

    // Cost of the lexicon under the model's own coding scheme:
    // corpus cost + lexicon cost, in bits.
    double total_cost() const;
    // Coding cost of a single morph in a segmentation.
    double morph_cost(std::string_view morph) const;

  private:
    double char_cost(const std::string& ch) const;
    double lexical_cost(std::string_view morph) const;

    std::map<std::string, double> _lexicon;
    MdlParams _params;
    double _word_weight;
    std::map<std::string, double> _char_costs;
    double _end_cost = 0.0;
    double _unseen_char_cost = 0.0;
    double _token_mass = 0.0;
  };

  struct MdlTrainingResult
  {
    MdlModel model;
    // Total cost of the all-words-unsegmented starting point.
    double baseline_cost;
    // Total cost after each epoch.
    std::vector<double> epoch_costs;
    std::map<std::string, Analysis> analyses;
  };

  MdlTrainingResult train_mdl(const WordCounts& word_counts, const MdlParams& params = {});

}
