#ifndef CAUSENET_CBN_H_
#define CAUSENET_CBN_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causenet/corpus.h"
#include "causenet/hypernymy.h"
#include "causenet/lattice.h"
#include "causenet/scoring.h"

namespace causenet {

enum class CountUnit { kSentence, kDocument };

std::string ToString(CountUnit unit);
CountUnit ParseCountUnit(std::string_view text);

// Something that can be counted in a unit: present when any one of the
// alternatives has all of its stems in the unit.
struct TermSpec {
  std::string name;
  std::vector<std::vector<std::string>> alternatives;
};

// One term per distinct value phrase.
std::vector<TermSpec> ValueTerms(const VariableStore& store);
// One term per variable, present when any of its values is.
std::vector<TermSpec> ConceptTerms(const VariableStore& store);

class CooccurrenceCounts {
 public:
  CooccurrenceCounts() = default;
  CooccurrenceCounts(CountUnit unit, std::size_t n_units,
                     std::map<std::string, std::size_t, std::less<>> singles,
                     std::map<std::pair<std::string, std::string>, std::size_t> pairs);

  CountUnit unit() const { return unit_; }
  std::size_t n_units() const { return n_units_; }
  const std::map<std::string, std::size_t, std::less<>>& singles() const { return singles_; }
  // Keys are ordered pairs (x, y) with x < y.
  const std::map<std::pair<std::string, std::string>, std::size_t>& pairs() const {
    return pairs_;
  }

  // Zero for terms never seen. Pair(x, x) is Single(x).
  std::size_t Single(std::string_view term) const;
  std::size_t Pair(std::string_view x, std::string_view y) const;

 private:
  CountUnit unit_ = CountUnit::kSentence;
  std::size_t n_units_ = 0;
  std::map<std::string, std::size_t, std::less<>> singles_;
  std::map<std::pair<std::string, std::string>, std::size_t> pairs_;
};

// Units are sentences or whole documents (the union of their stems).
CooccurrenceCounts CountCooccurrences(const CorpusStore& corpus,
                                      const std::vector<TermSpec>& terms, CountUnit unit,
                                      int workers = 1);
CooccurrenceCounts CountCooccurrences(const CorpusStore& corpus, const VariableStore& store,
                                      CountUnit unit, int workers = 1);

// Normalized PMI from raw counts:
//
//   ln(p(x,y) / (p(x) p(y))) / -ln p(x,y)
//
// with p(x,y) = 0 giving -1 and p(x,y) = 1 giving 1. Independence gives
// exactly 0 and the sign always agrees with c_xy * n versus c_x * c_y. Throws
// UndefinedError when either marginal is zero.
double NpmiFromCounts(std::size_t c_xy, std::size_t c_x, std::size_t c_y, std::size_t n);
double Npmi(std::string_view x, std::string_view y, const CooccurrenceCounts& counts);

struct GraphEdge {
  std::string cause;
  std::string effect;
  double cr_value = 0.0;  // in the cause -> effect direction
  LinkProvenance provenance = LinkProvenance::kDirect;
  std::optional<DirectedPair> source;

  bool operator==(const GraphEdge&) const = default;
};

struct RemovedEdge {
  GraphEdge edge;
  std::string reason;

  bool operator==(const RemovedEdge&) const = default;
};

class CausalGraph {
 public:
  CausalGraph() = default;
  // Throws DomainError on self-loops, unknown nodes, or duplicate edges.
  CausalGraph(std::vector<std::string> nodes, std::vector<GraphEdge> edges,
              std::vector<CRScore> bidirectional = {}, std::vector<RemovedEdge> removed = {});

  const std::vector<std::string>& nodes() const { return nodes_; }
  // Sorted by (cause, effect).
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<CRScore>& bidirectional() const { return bidirectional_; }
  const std::vector<RemovedEdge>& removed() const { return removed_; }

  // Sorted parent names.
  std::vector<std::string> Parents(std::string_view node) const;

  // Kahn's algorithm, smallest ready node first. nullopt if there is a cycle.
  std::optional<std::vector<std::string>> TopologicalOrder() const;
  bool IsAcyclic() const { return TopologicalOrder().has_value(); }

  // Edges of some directed cycle in path order, or empty when acyclic. The
  // search is deterministic.
  std::vector<GraphEdge> FindCycle() const;

  bool operator==(const CausalGraph&) const = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<CRScore> bidirectional_;
  std::vector<RemovedEdge> removed_;
};

struct GraphOptions {
  double mu = 0.05;
  // Add edges inherited through the lattice (requires a lattice).
  bool inherit = true;
  InheritanceOptions inheritance;
};

// Edges from the labels the scores get at `mu`, plus inherited edges. Pairs
// flagged bidirectional are set aside instead of becoming edges. Remaining
// cycles are broken by deleting the edge with the smallest |cr_value| on a
// found cycle, ties going to the lexicographically smallest (cause, effect).
// Every deletion is kept in removed().
CausalGraph BuildCausalGraph(const std::vector<std::string>& nodes,
                             const std::vector<CRScore>& scores, const ConceptLattice* lattice,
                             const GraphOptions& options);

// Maps an NPMI value to a non-negative affinity.
using NpmiMapping = std::function<double(double)>;
// (n + 1) / 2
double ShiftedNpmi(double npmi);

// Rows are indexed by the parent assignment in mixed radix, the first parent
// most significant. Each row is a distribution over `values`.
struct CPDTable {
  std::string variable;
  std::vector<std::string> values;
  std::vector<std::string> parents;
  std::vector<std::vector<std::string>> parent_values;
  std::vector<std::vector<double>> rows;

  std::size_t RowIndex(const std::vector<std::size_t>& parent_assignment) const;

  bool operator==(const CPDTable&) const = default;
};

struct CpdOptions {
  NpmiMapping mapping = ShiftedNpmi;
  // Refuse to materialize tables larger than this many cells.
  std::size_t max_cells = 2'000'000;
};

// Parentless: relative frequency of the values in the counts. Otherwise each
// row scores child value x as the product over parents of mapping(npmi(x, y_j)),
// then normalizes. Rows that score zero everywhere become uniform. An NPMI
// with a zero marginal counts as 0. Throws DomainError on an empty value set
// or an oversized table.
CPDTable BuildCpd(const LinguisticVariable& node,
                  const std::vector<const LinguisticVariable*>& parents,
                  const CooccurrenceCounts& counts, const CpdOptions& options = {});

struct RunMetadata {
  double mu = 0.05;
  std::string weight_mode = "cosine";
  double bidirectional_tau = 0.75;
  std::string unit = "sentence";
  std::string splitter;
  std::string lexicon_sha256;
  std::string embeddings_sha256;
  std::string stopwords_sha256;

  bool operator==(const RunMetadata&) const = default;
};

class CBN {
 public:
  CBN() = default;
  // Throws DomainError unless there is exactly one CPD per node and its
  // parents match the graph.
  CBN(CausalGraph graph, std::vector<CPDTable> cpds, RunMetadata metadata = {});

  const CausalGraph& graph() const { return graph_; }
  const std::vector<CPDTable>& cpds() const { return cpds_; }
  const CPDTable& Cpd(std::string_view node) const;
  const RunMetadata& metadata() const { return metadata_; }

  // Product of the CPD entries picked by a full assignment node -> value.
  // Throws DomainError naming the node for a missing or unknown value.
  double JointProbability(const std::map<std::string, std::string>& assignment) const;

  // {schema_version, nodes, edges, cpds, bidirectional_sidecar, removed_edges,
  // run_metadata}
  std::string ToJson() const;
  static CBN FromJson(std::string_view contents, const std::string& source = "cbn.json");
  std::string ToDot() const;

  bool operator==(const CBN&) const = default;

 private:
  CausalGraph graph_;
  std::vector<CPDTable> cpds_;
  std::map<std::string, std::size_t, std::less<>> cpd_index_;
  RunMetadata metadata_;
};

CBN BuildCbn(const CausalGraph& graph, const VariableStore& store,
             const CooccurrenceCounts& counts, const CpdOptions& options = {},
             RunMetadata metadata = {});

}  // namespace causenet

#endif  // CAUSENET_CBN_H_
