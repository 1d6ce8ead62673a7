#ifndef CAUSENET_SCORING_H_
#define CAUSENET_SCORING_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causenet/causaldb.h"
#include "causenet/hypernymy.h"
#include "causenet/weighting.h"

namespace causenet {

// Numeric values match the annotation labels 1 / 0 / -1.
enum class CausalLabel : int { kBCausesA = -1, kNone = 0, kACausesB = 1 };

std::string ToString(CausalLabel label);
CausalLabel ParseCausalLabel(std::string_view text);
CausalLabel Mirror(CausalLabel label);

struct ScoringConfig {
  double mu = 0.05;
  WeightMode weight_mode = WeightMode::kCosine;
  double bidirectional_tau = 0.75;

  // Throws DomainError unless 0 <= mu < 1 and mu < tau <= 1.
  void Validate() const;
};

struct CRScore {
  std::string concept_a;
  std::string concept_b;
  double forward_term = 0.0;  // evidence that A causes B
  double reverse_term = 0.0;  // evidence that B causes A
  double value = 0.0;         // forward_term - reverse_term
  CausalLabel label = CausalLabel::kNone;
  bool bidirectional = false;

  bool operator==(const CRScore&) const = default;
};

// Weighted fraction of `cause` values that have Gamma evidence into some
// value of `effect`:
//
//   sum_i w_i * [exists j: (v_i, u_j) in Gamma] / sum_i w_i
//
// Each cause value contributes at most its weight, so the term lies in
// [0, 1]. A value phrase matches a Gamma side when all of its stems are in
// that side. Weights are the ones stored on the variables. Throws
// UndefinedError when the cause weights sum to zero.
double DirectedTerm(const LinguisticVariable& cause, const LinguisticVariable& effect,
                    const GammaDB& gamma);

// Label bands: (mu, 1] -> A causes B, [-mu, mu] -> none, [-1, -mu) -> B causes A.
CausalLabel ClassifyRelation(double value, double mu);

bool DetectBidirectional(double forward_term, double reverse_term, double tau);

CRScore CausalRelation(const LinguisticVariable& a, const LinguisticVariable& b,
                       const GammaDB& gamma, const ScoringConfig& config);

// The same score seen from (B, A).
CRScore Mirror(const CRScore& score);

// Scores every unordered pair of variables once, with concept_a < concept_b.
// Pairs involving a variable whose weights sum to zero are skipped with a
// warning.
std::vector<CRScore> ScoreAllPairs(const VariableStore& store, const GammaDB& gamma,
                                   const ScoringConfig& config, int workers = 1);

// Columns: conceptA, conceptB, forward, reverse, value, label, bidirectional.
std::string ScoresToTsv(const std::vector<CRScore>& scores);
std::vector<CRScore> ScoresFromTsv(std::string_view contents,
                                   const std::string& source = "scores.tsv");

// Order-insensitive lookup of cached scores.
class ScoreTable {
 public:
  explicit ScoreTable(const std::vector<CRScore>& scores);

  // The score for (a, b), mirrored if it was stored as (b, a).
  std::optional<CRScore> Find(std::string_view a, std::string_view b) const;
  const std::vector<CRScore>& scores() const { return scores_; }

 private:
  std::vector<CRScore> scores_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index_;
};

}  // namespace causenet

#endif  // CAUSENET_SCORING_H_
