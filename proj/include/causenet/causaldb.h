#ifndef CAUSENET_CAUSALDB_H_
#define CAUSENET_CAUSALDB_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causenet/corpus.h"
#include "causenet/text.h"

namespace causenet {

enum class MarkerKind { kDiscourse, kVerb };
// Linear order of the two sides around the marker: "A causes B" is
// cause-first, "B because A" is effect-first.
enum class MarkerOrder { kCauseFirst, kEffectFirst };
// Inter-sentential markers ("Therefore,") link to the preceding clause or
// sentence and only fire at the start of a clause.
enum class MarkerScope { kIntra, kInter };

std::string ToString(MarkerKind kind);
std::string ToString(MarkerOrder order);
std::string ToString(MarkerScope scope);

struct Marker {
  std::vector<std::string> pattern;  // lowercase word tokens
  MarkerKind kind = MarkerKind::kDiscourse;
  MarkerOrder order = MarkerOrder::kCauseFirst;
  MarkerScope scope = MarkerScope::kIntra;

  std::string Text() const;
  bool operator==(const Marker&) const = default;
};

class MarkerLexicon {
 public:
  // Throws DomainError on empty lexicon, empty patterns or a repeated
  // (pattern, kind).
  explicit MarkerLexicon(std::vector<Marker> entries);

  const std::vector<Marker>& entries() const { return entries_; }
  std::size_t longest_pattern() const { return longest_; }

 private:
  std::vector<Marker> entries_;
  std::size_t longest_ = 0;
};

// TSV rows: pattern, kind (discourse|verb), order (cause-first|effect-first),
// scope (intra|inter). Blank lines and '#' comments are skipped.
MarkerLexicon CompileMarkerLexicon(const std::filesystem::path& path);
MarkerLexicon ParseMarkerLexicon(std::string_view contents, const std::string& source);

struct CauseEffectSpan {
  std::string cause;
  std::string effect;
  std::size_t marker = 0;  // index into the lexicon entries
  bool uses_previous = false;

  bool operator==(const CauseEffectSpan&) const = default;
};

// Turns a sentence into cause/effect text spans. Replaceable so that a
// parser-based splitter can be slotted in.
class ClauseSplitter {
 public:
  virtual ~ClauseSplitter() = default;
  virtual std::vector<CauseEffectSpan> Split(const Sentence& sentence,
                                             const Sentence* previous,
                                             const MarkerLexicon& lexicon) const = 0;
  virtual std::string name() const = 0;
};

// Splits around each marker occurrence. The clause before the marker and the
// clause after it are cut at , ; : and at other markers; the order field
// decides which one is the cause. A clause-initial marker takes the previous
// clause (or the previous sentence, for an inter-sentential marker opening
// the sentence); a sentence-initial intra marker ("Because A, B") pairs its
// own clause with the next one. Occurrences with a negation among the three
// words before the marker are skipped.
class MarkerAnchoredSplitter : public ClauseSplitter {
 public:
  std::vector<CauseEffectSpan> Split(const Sentence& sentence, const Sentence* previous,
                                     const MarkerLexicon& lexicon) const override;
  std::string name() const override { return "marker-anchored"; }
};

std::vector<CauseEffectSpan> SplitCauseEffect(const Sentence& sentence,
                                              const Sentence* previous,
                                              const MarkerLexicon& lexicon);

struct GammaEntry {
  std::vector<std::string> cause_stems;   // sorted, unique
  std::vector<std::string> effect_stems;  // sorted, unique
  Marker marker;
  SentenceId provenance;
  std::optional<SentenceId> previous;

  bool operator==(const GammaEntry&) const = default;
};

// The cause-effect evidence database.
class GammaDB {
 public:
  GammaDB() = default;
  // Entries are sorted by provenance; the stem-pair index is rebuilt.
  explicit GammaDB(std::vector<GammaEntry> entries);

  const std::vector<GammaEntry>& entries() const { return entries_; }
  const std::map<std::pair<std::string, std::string>, std::size_t>& pair_index() const {
    return pair_index_;
  }
  bool empty() const { return entries_.empty(); }

  std::size_t Count(std::string_view cause, std::string_view effect) const;

  // Entries whose cause (or effect) side contains every stem given. An empty
  // stem list matches nothing.
  std::vector<std::size_t> EntriesWithCause(std::span<const std::string> stems) const;
  std::vector<std::size_t> EntriesWithEffect(std::span<const std::string> stems) const;

  // Number of entries with `cause` contained in the cause side and `effect`
  // contained in the effect side.
  std::size_t PhraseCount(std::span<const std::string> cause,
                          std::span<const std::string> effect) const;

  std::string ToJsonl() const;
  // cause<TAB>effect<TAB>count, sorted.
  std::string IndexToTsv() const;
  static GammaDB FromJsonl(std::string_view contents,
                           const std::string& source = "gamma.jsonl");

  bool operator==(const GammaDB& other) const { return entries_ == other.entries_; }

 private:
  std::vector<GammaEntry> entries_;
  std::map<std::pair<std::string, std::string>, std::size_t> pair_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> cause_postings_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> effect_postings_;
};

GammaDB BuildGamma(const CorpusStore& corpus, const MarkerLexicon& lexicon,
                   const TextNormalizer& normalizer, int workers = 1,
                   const ClauseSplitter* splitter = nullptr);

std::size_t GammaCount(const GammaDB& db, std::string_view cause, std::string_view effect);

}  // namespace causenet

#endif  // CAUSENET_CAUSALDB_H_
