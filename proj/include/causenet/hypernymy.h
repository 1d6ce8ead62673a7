#ifndef CAUSENET_HYPERNYMY_H_
#define CAUSENET_HYPERNYMY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "causenet/corpus.h"
#include "causenet/embeddings.h"
#include "causenet/text.h"
#include "causenet/weighting.h"

namespace causenet {

// A lexico-syntactic IsA template such as "X such as Y". X is the hypernym
// slot, Y the hyponym slot; both must sit at the ends of the template with at
// least one literal token between them.
class IsAPattern {
 public:
  // Throws DomainError on a malformed template.
  explicit IsAPattern(std::string_view text);

  const std::string& text() const { return text_; }
  const std::vector<std::string>& anchor() const { return anchor_; }
  bool hypernym_first() const { return hypernym_first_; }

 private:
  std::string text_;
  std::vector<std::string> anchor_;  // literal tokens between the slots
  bool hypernym_first_ = true;
};

std::vector<IsAPattern> DefaultIsAPatterns();
// One template per line; blank lines and '#' comments skipped.
std::vector<IsAPattern> LoadIsAPatterns(const std::filesystem::path& path);
std::vector<IsAPattern> ParseIsAPatterns(std::string_view contents,
                                         const std::string& source);

struct IsAPair {
  std::string variable;  // hypernym
  std::string value;     // hyponym
  std::size_t count = 0;
  double plausibility = 0.0;  // count / total count of the variable

  bool operator==(const IsAPair&) const = default;
};

// Reduces a plural head noun to its singular form ("eating disorders" ->
// "eating disorder"). Only the last word is touched.
std::string SingularizePhrase(std::string_view phrase);

// Matches every pattern in every sentence. Phrases are at most three
// non-stopword tokens next to the pattern anchor; the hyponym slot also
// collects coordinated lists ("such as A, B and C"). Output is sorted by
// (variable, descending count, value).
std::vector<IsAPair> ExtractIsAPairs(const CorpusStore& corpus,
                                     const std::vector<IsAPattern>& patterns,
                                     const TextNormalizer& normalizer, int workers = 1);

// All pairs found in a single raw sentence, unaggregated, in match order.
std::vector<std::pair<std::string, std::string>> MatchIsA(
    std::string_view sentence, const std::vector<IsAPattern>& patterns,
    const TextNormalizer& normalizer);

struct ValueEntry {
  std::string phrase;
  std::size_t count = 0;
  double plausibility = 0.0;
  double weight = 0.0;
  std::vector<std::string> stems;

  bool operator==(const ValueEntry&) const = default;
};

struct LinguisticVariable {
  std::string name;
  std::vector<ValueEntry> values;

  double TotalWeight() const;
  const ValueEntry* FindValue(std::string_view phrase) const;
  bool operator==(const LinguisticVariable&) const = default;
};

// Variables by name.
class VariableStore {
 public:
  VariableStore() = default;
  // Throws DomainError on empty variables, duplicate values or values without
  // stems.
  explicit VariableStore(std::vector<LinguisticVariable> variables);

  const std::map<std::string, LinguisticVariable>& variables() const { return variables_; }
  const LinguisticVariable* Find(std::string_view name) const;
  const LinguisticVariable& Get(std::string_view name) const;
  std::vector<std::string> Names() const;
  std::size_t size() const { return variables_.size(); }
  bool empty() const { return variables_.empty(); }

  // One {variable, values: [{value, count, plausibility, weight}]} per line.
  std::string ToJsonl() const;
  // Value stems are not persisted and are recomputed with `normalizer`.
  static VariableStore FromJsonl(std::string_view contents,
                                 const TextNormalizer& normalizer,
                                 const std::string& source = "variables.jsonl");

  bool operator==(const VariableStore&) const = default;

 private:
  std::map<std::string, LinguisticVariable> variables_;
};

struct VariableStoreOptions {
  std::size_t min_count = 2;
  double min_plausibility = 0.01;
  WeightMode weight_mode = WeightMode::kCosine;
};

// Keeps pairs passing both thresholds, weights each value with ValueWeight,
// and drops variables left without values. Values without a vector (or
// without stems) are skipped with a warning.
VariableStore BuildVariableStore(const std::vector<IsAPair>& pairs,
                                 const VariableStoreOptions& options,
                                 const EmbeddingStore& embeddings,
                                 const TextNormalizer& normalizer);

}  // namespace causenet

#endif  // CAUSENET_HYPERNYMY_H_
