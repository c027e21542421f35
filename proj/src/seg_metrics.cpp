#include "cswseg/seg_metrics.hpp"

#include "cswseg/errors.hpp"

namespace cswseg
{

  double oov_rate(const std::set<std::string>& train_vocab, const std::vector<std::string>& eval_morphs)
  {
    if (eval_morphs.empty())
      throw ValidationError("OOV rate is undefined on an empty evaluation corpus");
    std::size_t unseen = 0;
    for (const auto& morph : eval_morphs)
      if (!train_vocab.count(morph))
        ++unseen;
    return 100.0 * static_cast<double>(unseen) / static_cast<double>(eval_morphs.size());
  }

  DiagnosticCounts& DiagnosticCounts::operator+=(const DiagnosticCounts& other)
  {
    under += other.under;
    over += other.over;
    correct += other.correct;
    correct_seg += other.correct_seg;
    correct_unseg += other.correct_unseg;
    return *this;
  }

  SegDiagnostics seg_diagnostics(const std::vector<Analysis>& pred,
                                 const std::vector<Analysis>& gold,
                                 const std::vector<Language>& languages)
  {
    if (pred.size() != gold.size() || pred.size() != languages.size())
      throw AlignmentError("diagnostics need aligned inputs: " + std::to_string(pred.size()) + " predicted, "
                           + std::to_string(gold.size()) + " gold, " + std::to_string(languages.size()) + " language tags");
    SegDiagnostics out;
    for (std::size_t i = 0; i < pred.size(); ++i)
    {
      DiagnosticCounts word;
      if (pred[i].size() > gold[i].size())
        word.over = 1;
      else if (pred[i].size() < gold[i].size())
        word.under = 1;
      else
      {
        word.correct = 1;
        (gold[i].size() > 1 ? word.correct_seg : word.correct_unseg) = 1;
      }
      out.all += word;
      out.by_language[languages[i]] += word;
    }
    return out;
  }

}
