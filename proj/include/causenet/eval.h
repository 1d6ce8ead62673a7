#ifndef CAUSENET_EVAL_H_
#define CAUSENET_EVAL_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causenet/causaldb.h"
#include "causenet/cbn.h"
#include "causenet/corpus.h"
#include "causenet/hypernymy.h"
#include "causenet/scoring.h"

namespace causenet {

struct AnnotatedTuple {
  std::string concept_a;
  std::string concept_b;
  CausalLabel label = CausalLabel::kNone;

  bool operator==(const AnnotatedTuple&) const = default;
};

// TSV rows "conceptA<TAB>conceptB<TAB>label" with label in {-1, 0, 1}. A
// first row whose label column is not numeric is taken as a header. Rejects
// duplicate (A, B) rows. (A, B) and (B, A) may both appear; that warns, and
// their labels must mirror each other.
std::vector<AnnotatedTuple> ParseAnnotations(std::string_view contents,
                                             const std::string& source = "annotations");
std::vector<AnnotatedTuple> LoadAnnotations(const std::filesystem::path& path);

using PredictionMap = std::map<std::pair<std::string, std::string>, CausalLabel>;

// Labels every scored pair at `mu`, keyed (concept_a, concept_b).
PredictionMap ClassifyScores(const std::vector<CRScore>& scores, double mu);

// Index 0, 1, 2 stand for the labels -1, 0, 1.
constexpr std::size_t LabelIndex(CausalLabel label) {
  return static_cast<std::size_t>(static_cast<int>(label) + 1);
}

struct EvalReport {
  std::size_t total = 0;
  std::size_t missing_predictions = 0;
  // confusion[gold][predicted]
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::array<double, 3> precision{};
  std::array<double, 3> recall{};
  std::array<double, 3> per_class_f1{};
  double accuracy = 0.0;
  double macro_f1 = 0.0;

  bool operator==(const EvalReport&) const = default;
};

// Gold pairs missing from `predictions` are looked up mirrored, and count as
// predicted 0 if absent both ways. Per-class F1 is 0 when undefined. Throws
// DomainError on empty gold.
EvalReport Evaluate(const PredictionMap& predictions, const std::vector<AnnotatedTuple>& gold);

// The most frequent gold label; ties go to 0, then -1, then 1.
CausalLabel MajorityLabel(const std::vector<AnnotatedTuple>& gold);
PredictionMap ConstantPredictions(const std::vector<AnnotatedTuple>& gold, CausalLabel label);

struct SweepPoint {
  double mu = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  double majority_f1 = 0.0;
};

// Re-labels the cached values at each mu; nothing is re-scored. Throws
// DomainError on an empty grid or a mu outside [0, 1).
std::vector<SweepPoint> SweepMu(const std::vector<CRScore>& scores,
                                const std::vector<AnnotatedTuple>& gold,
                                const std::vector<double>& grid);
// Columns: mu, macro_f1, majority_f1.
std::string SweepToTsv(const std::vector<SweepPoint>& curve);

// 0, 0.05, ..., 0.95
std::vector<double> DefaultMuGrid();

enum class Baseline { kFrequency, kPrecedence, kPmi, kPrecedencePmi };

std::string ToString(Baseline baseline);
const std::vector<Baseline>& AllBaselines();

struct BaselineDecision {
  double forward = 0.0;  // S(A -> B)
  double reverse = 0.0;  // S(B -> A)
  CausalLabel label = CausalLabel::kNone;
};

// Heuristic direction scores for each (A, B):
//   frequency: Gamma entries linking a value of A (cause side) to a value of
//     B (effect side);
//   precedence: units where a value of A is mentioned before a value of B;
//   PMI: concept-level NPMI; when positive the direction comes from
//     precedence, otherwise no decision;
//   precedence-PMI: NPMI with the joint count replaced by ordered co-mentions.
// A label is the sign of S(A -> B) - S(B -> A), 0 on ties.
class HeuristicBaselines {
 public:
  HeuristicBaselines(const GammaDB& gamma, const CorpusStore& corpus,
                     const VariableStore& store, CountUnit unit = CountUnit::kSentence);

  BaselineDecision Decide(Baseline baseline, std::string_view a, std::string_view b) const;
  PredictionMap Predict(Baseline baseline,
                        const std::vector<std::pair<std::string, std::string>>& pairs) const;

  // Units where some value of `a` is mentioned before some value of `b`.
  std::size_t PrecedenceCount(std::string_view a, std::string_view b) const;
  std::size_t FrequencyCount(std::string_view a, std::string_view b) const;

 private:
  // First and last mention position of a variable in a unit.
  struct Span {
    std::size_t first;
    std::size_t last;
  };

  const GammaDB& gamma_;
  const VariableStore& store_;
  std::size_t n_units_ = 0;
  // Per variable: unit index -> mention span.
  std::map<std::string, std::map<std::size_t, Span>, std::less<>> mentions_;
};

// Fleiss' kappa over an items x categories matrix of rating counts. Every
// row must sum to the same rater count n >= 2. When chance agreement is 1
// (one category used throughout) the result is 1.
double FleissKappa(const std::vector<std::vector<std::size_t>>& ratings);

// JSON and plain-text renderings of a report.
nlohmann::json ReportToJson(const EvalReport& report);
std::string ReportToText(const EvalReport& report, std::string_view title);

}  // namespace causenet

#endif  // CAUSENET_EVAL_H_
