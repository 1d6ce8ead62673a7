#include "causenet/cbn.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "causenet/util.h"

namespace causenet {

using json = nlohmann::json;

std::string ToString(CountUnit unit) {
  return unit == CountUnit::kSentence ? "sentence" : "document";
}

CountUnit ParseCountUnit(std::string_view text) {
  if (text == "sentence") return CountUnit::kSentence;
  if (text == "document") return CountUnit::kDocument;
  throw DomainError(fmt::format("unknown co-occurrence unit '{}'", text));
}

std::vector<TermSpec> ValueTerms(const VariableStore& store) {
  std::map<std::string, std::vector<std::string>> phrases;
  for (const auto& [_, var] : store.variables()) {
    for (const auto& v : var.values) phrases.emplace(v.phrase, v.stems);
  }
  std::vector<TermSpec> out;
  for (auto& [phrase, stems] : phrases) out.push_back({phrase, {std::move(stems)}});
  return out;
}

std::vector<TermSpec> ConceptTerms(const VariableStore& store) {
  std::vector<TermSpec> out;
  for (const auto& [name, var] : store.variables()) {
    TermSpec t{name, {}};
    for (const auto& v : var.values) t.alternatives.push_back(v.stems);
    out.push_back(std::move(t));
  }
  return out;
}

CooccurrenceCounts::CooccurrenceCounts(
    CountUnit unit, std::size_t n_units, std::map<std::string, std::size_t, std::less<>> singles,
    std::map<std::pair<std::string, std::string>, std::size_t> pairs)
    : unit_(unit), n_units_(n_units), singles_(std::move(singles)), pairs_(std::move(pairs)) {}

std::size_t CooccurrenceCounts::Single(std::string_view term) const {
  auto it = singles_.find(term);
  return it == singles_.end() ? 0 : it->second;
}

std::size_t CooccurrenceCounts::Pair(std::string_view x, std::string_view y) const {
  if (x == y) return Single(x);
  std::pair<std::string, std::string> key(x, y);
  if (key.second < key.first) std::swap(key.first, key.second);
  auto it = pairs_.find(key);
  return it == pairs_.end() ? 0 : it->second;
}

CooccurrenceCounts CountCooccurrences(const CorpusStore& corpus,
                                      const std::vector<TermSpec>& terms, CountUnit unit,
                                      int workers) {
  std::vector<std::vector<const Sentence*>> units;
  for (const auto& doc : corpus.documents()) {
    if (unit == CountUnit::kDocument) {
      units.emplace_back();
      for (const auto& s : doc.sentences) units.back().push_back(&s);
    } else {
      for (const auto& s : doc.sentences) units.push_back({&s});
    }
  }
  // Term indices present in each unit, ascending.
  auto present = ParallelMap(units.size(), workers, [&](std::size_t u) {
    std::unordered_set<std::string_view> stems;
    for (const Sentence* s : units[u]) {
      for (const auto& st : s->stems) stems.insert(st);
    }
    std::vector<std::size_t> hits;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      for (const auto& alt : terms[t].alternatives) {
        if (alt.empty()) continue;
        bool all = std::all_of(alt.begin(), alt.end(),
                               [&](const std::string& st) { return stems.count(st) > 0; });
        if (all) {
          hits.push_back(t);
          break;
        }
      }
    }
    return hits;
  });

  std::vector<std::size_t> singles(terms.size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairs;
  for (const auto& hits : present) {
    for (std::size_t i = 0; i < hits.size(); ++i) {
      ++singles[hits[i]];
      for (std::size_t j = i + 1; j < hits.size(); ++j) ++pairs[{hits[i], hits[j]}];
    }
  }
  std::map<std::string, std::size_t, std::less<>> single_map;
  for (std::size_t t = 0; t < terms.size(); ++t) single_map[terms[t].name] += singles[t];
  std::map<std::pair<std::string, std::string>, std::size_t> pair_map;
  for (const auto& [key, count] : pairs) {
    std::string a = terms[key.first].name;
    std::string b = terms[key.second].name;
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    pair_map[{a, b}] += count;
  }
  return CooccurrenceCounts(unit, units.size(), std::move(single_map), std::move(pair_map));
}

CooccurrenceCounts CountCooccurrences(const CorpusStore& corpus, const VariableStore& store,
                                      CountUnit unit, int workers) {
  return CountCooccurrences(corpus, ValueTerms(store), unit, workers);
}

double NpmiFromCounts(std::size_t c_xy, std::size_t c_x, std::size_t c_y, std::size_t n) {
  if (c_x == 0 || c_y == 0 || n == 0) {
    throw UndefinedError("npmi undefined: a marginal probability is zero");
  }
  if (c_xy > std::min(c_x, c_y) || std::max(c_x, c_y) > n) {
    throw DomainError(fmt::format("inconsistent counts c_xy={} c_x={} c_y={} n={}", c_xy, c_x,
                                  c_y, n));
  }
  if (c_xy == 0) return -1.0;
  if (c_xy == n) return 1.0;
  // Compare p(x,y) with p(x) p(y) as c_xy * n against c_x * c_y. Exact in
  // long double for any realistic corpus size, so the sign is never lost.
  const long double joint = static_cast<long double>(c_xy) * static_cast<long double>(n);
  const long double product = static_cast<long double>(c_x) * static_cast<long double>(c_y);
  if (joint == product) return 0.0;
  const long double pmi = std::log1p((joint - product) / product);
  const long double denom = -std::log(static_cast<long double>(c_xy) / n);
  return std::clamp(static_cast<double>(pmi / denom), -1.0, 1.0);
}

double Npmi(std::string_view x, std::string_view y, const CooccurrenceCounts& counts) {
  const std::size_t cx = counts.Single(x);
  const std::size_t cy = counts.Single(y);
  if (cx == 0 || cy == 0) {
    throw UndefinedError(
        fmt::format("npmi({}, {}) undefined: '{}' never occurs", x, y, cx == 0 ? x : y));
  }
  return NpmiFromCounts(counts.Pair(x, y), cx, cy, counts.n_units());
}

namespace {

bool EdgeKeyLess(const GraphEdge& a, const GraphEdge& b) {
  return std::tie(a.cause, a.effect) < std::tie(b.cause, b.effect);
}

}  // namespace

CausalGraph::CausalGraph(std::vector<std::string> nodes, std::vector<GraphEdge> edges,
                         std::vector<CRScore> bidirectional, std::vector<RemovedEdge> removed)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      bidirectional_(std::move(bidirectional)),
      removed_(std::move(removed)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw DomainError("duplicate node in causal graph");
  }
  std::sort(edges_.begin(), edges_.end(), EdgeKeyLess);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.cause == e.effect) throw DomainError(fmt::format("self-loop on '{}'", e.cause));
    for (const auto* n : {&e.cause, &e.effect}) {
      if (!std::binary_search(nodes_.begin(), nodes_.end(), *n)) {
        throw DomainError(fmt::format("edge references unknown node '{}'", *n));
      }
    }
    if (i > 0 && !EdgeKeyLess(edges_[i - 1], e)) {
      throw DomainError(fmt::format("duplicate edge {} -> {}", e.cause, e.effect));
    }
  }
}

std::vector<std::string> CausalGraph::Parents(std::string_view node) const {
  std::vector<std::string> out;
  for (const auto& e : edges_) {
    if (e.effect == node) out.push_back(e.cause);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<std::string>> CausalGraph::TopologicalOrder() const {
  std::map<std::string_view, std::size_t> indegree;
  std::map<std::string_view, std::vector<std::string_view>> out_edges;
  for (const auto& n : nodes_) indegree[n] = 0;
  for (const auto& e : edges_) {
    ++indegree[e.effect];
    out_edges[e.cause].push_back(e.effect);
  }
  std::set<std::string_view> ready;
  for (const auto& [n, d] : indegree) {
    if (d == 0) ready.insert(n);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string_view n = *ready.begin();
    ready.erase(ready.begin());
    order.emplace_back(n);
    for (std::string_view m : out_edges[n]) {
      if (--indegree[m] == 0) ready.insert(m);
    }
  }
  if (order.size() != indegree.size()) return std::nullopt;
  return order;
}

std::vector<GraphEdge> CausalGraph::FindCycle() const {
  std::map<std::string_view, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < edges_.size(); ++i) out_edges[edges_[i].cause].push_back(i);
  // 0 = unvisited, 1 = on the current path, 2 = done.
  std::map<std::string_view, int> state;
  std::vector<std::size_t> path;  // edge indices
  std::vector<GraphEdge> cycle;

  std::function<bool(std::string_view)> visit = [&](std::string_view node) {
    state[node] = 1;
    for (std::size_t ei : out_edges[node]) {
      std::string_view next = edges_[ei].effect;
      path.push_back(ei);
      if (state[next] == 1) {
        auto start = std::find_if(path.begin(), path.end(),
                                  [&](std::size_t p) { return edges_[p].cause == next; });
        for (auto it = start; it != path.end(); ++it) cycle.push_back(edges_[*it]);
        return true;
      }
      if (state[next] == 0 && visit(next)) return true;
      path.pop_back();
    }
    state[node] = 2;
    return false;
  };
  for (const auto& n : nodes_) {
    if (state[n] == 0 && visit(n)) break;
  }
  return cycle;
}

CausalGraph BuildCausalGraph(const std::vector<std::string>& nodes,
                             const std::vector<CRScore>& scores, const ConceptLattice* lattice,
                             const GraphOptions& options) {
  std::map<DirectedPair, GraphEdge> edges;
  std::set<std::pair<std::string, std::string>> bidirectional_keys;
  std::vector<CRScore> bidirectional;
  std::map<DirectedPair, double> cr_of;
  for (const auto& s : scores) {
    if (s.concept_a == s.concept_b) continue;
    if (s.bidirectional) {
      bidirectional.push_back(s);
      bidirectional_keys.insert({s.concept_a, s.concept_b});
      bidirectional_keys.insert({s.concept_b, s.concept_a});
      continue;
    }
    const CausalLabel label = ClassifyRelation(s.value, options.mu);
    if (label == CausalLabel::kACausesB) {
      edges[{s.concept_a, s.concept_b}] = {s.concept_a, s.concept_b, s.value,
                                           LinkProvenance::kDirect, std::nullopt};
    } else if (label == CausalLabel::kBCausesA) {
      edges[{s.concept_b, s.concept_a}] = {s.concept_b, s.concept_a, -s.value,
                                           LinkProvenance::kDirect, std::nullopt};
    }
  }

  if (options.inherit && lattice != nullptr) {
    std::vector<DirectedPair> direct;
    for (const auto& [key, _] : edges) {
      direct.push_back(key);
    }
    for (const auto& link : InheritCausalRelations(*lattice, direct, options.inheritance)) {
      if (link.provenance != LinkProvenance::kInherited) continue;
      if (bidirectional_keys.count({link.cause, link.effect}) > 0) continue;
      DirectedPair key{link.cause, link.effect};
      if (edges.count(key) > 0) continue;
      edges[key] = {link.cause, link.effect, edges.at(*link.source).cr_value,
                    LinkProvenance::kInherited, link.source};
    }
  }

  std::vector<GraphEdge> edge_list;
  for (auto& [_, e] : edges) edge_list.push_back(std::move(e));
  std::sort(bidirectional.begin(), bidirectional.end(), [](const CRScore& a, const CRScore& b) {
    return std::tie(a.concept_a, a.concept_b) < std::tie(b.concept_a, b.concept_b);
  });

  std::vector<RemovedEdge> removed;
  while (true) {
    CausalGraph g(nodes, edge_list);
    auto cycle = g.FindCycle();
    if (cycle.empty()) break;
    const GraphEdge weakest = *std::min_element(
        cycle.begin(), cycle.end(), [](const GraphEdge& a, const GraphEdge& b) {
          const double fa = std::fabs(a.cr_value);
          const double fb = std::fabs(b.cr_value);
          if (fa != fb) return fa < fb;
          return EdgeKeyLess(a, b);
        });
    std::string path;
    for (const auto& e : cycle) path += (path.empty() ? "" : ", ") + e.cause + " > " + e.effect;
    Warn(fmt::format("removed edge {} -> {} (|cr| {}) to break cycle [{}]", weakest.cause,
                     weakest.effect, FormatDouble(std::fabs(weakest.cr_value)), path));
    removed.push_back({weakest, fmt::format("cycle: {}", path)});
    edge_list.erase(std::remove(edge_list.begin(), edge_list.end(), weakest), edge_list.end());
  }
  return CausalGraph(nodes, std::move(edge_list), std::move(bidirectional), std::move(removed));
}

double ShiftedNpmi(double npmi) { return (npmi + 1.0) / 2.0; }

std::size_t CPDTable::RowIndex(const std::vector<std::size_t>& parent_assignment) const {
  if (parent_assignment.size() != parents.size()) {
    throw DomainError(fmt::format("'{}' has {} parents, assignment has {}", variable,
                                  parents.size(), parent_assignment.size()));
  }
  std::size_t index = 0;
  for (std::size_t j = 0; j < parents.size(); ++j) {
    if (parent_assignment[j] >= parent_values[j].size()) {
      throw DomainError(fmt::format("value index out of range for parent '{}'", parents[j]));
    }
    index = index * parent_values[j].size() + parent_assignment[j];
  }
  return index;
}

namespace {

void Normalize(std::vector<double>& row) {
  double sum = 0.0;
  for (double p : row) sum += p;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    std::fill(row.begin(), row.end(), 1.0);
    sum = static_cast<double>(row.size());
  }
  for (double& p : row) p /= sum;
}

}  // namespace

CPDTable BuildCpd(const LinguisticVariable& node,
                  const std::vector<const LinguisticVariable*>& parents,
                  const CooccurrenceCounts& counts, const CpdOptions& options) {
  if (node.values.empty()) {
    throw DomainError(fmt::format("variable '{}' has no values", node.name));
  }
  CPDTable t;
  t.variable = node.name;
  for (const auto& v : node.values) t.values.push_back(v.phrase);
  std::size_t n_rows = 1;
  for (const auto* p : parents) {
    if (p->values.empty()) throw DomainError(fmt::format("variable '{}' has no values", p->name));
    t.parents.push_back(p->name);
    t.parent_values.emplace_back();
    for (const auto& v : p->values) t.parent_values.back().push_back(v.phrase);
    if (n_rows > options.max_cells / p->values.size()) {
      throw DomainError(fmt::format("conditional table for '{}' exceeds {} cells", node.name,
                                    options.max_cells));
    }
    n_rows *= p->values.size();
  }
  if (n_rows * t.values.size() > options.max_cells) {
    throw DomainError(
        fmt::format("conditional table for '{}' exceeds {} cells", node.name, options.max_cells));
  }

  if (parents.empty()) {
    std::vector<double> row;
    for (const auto& x : t.values) row.push_back(static_cast<double>(counts.Single(x)));
    Normalize(row);
    t.rows.push_back(std::move(row));
    return t;
  }

  // affinity[j][x][y] = mapping(npmi(x, y)) for parent j.
  std::vector<std::vector<std::vector<double>>> affinity(parents.size());
  for (std::size_t j = 0; j < parents.size(); ++j) {
    affinity[j].assign(t.values.size(), std::vector<double>(t.parent_values[j].size()));
    for (std::size_t x = 0; x < t.values.size(); ++x) {
      for (std::size_t y = 0; y < t.parent_values[j].size(); ++y) {
        double npmi = 0.0;
        try {
          npmi = Npmi(t.values[x], t.parent_values[j][y], counts);
        } catch (const UndefinedError&) {
        }
        affinity[j][x][y] = options.mapping(npmi);
      }
    }
  }
  t.rows.reserve(n_rows);
  std::vector<std::size_t> assignment(parents.size(), 0);
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::vector<double> row(t.values.size(), 1.0);
    for (std::size_t x = 0; x < t.values.size(); ++x) {
      for (std::size_t j = 0; j < parents.size(); ++j) row[x] *= affinity[j][x][assignment[j]];
    }
    Normalize(row);
    t.rows.push_back(std::move(row));
    for (std::size_t j = parents.size(); j-- > 0;) {
      if (++assignment[j] < t.parent_values[j].size()) break;
      assignment[j] = 0;
    }
  }
  return t;
}

CBN::CBN(CausalGraph graph, std::vector<CPDTable> cpds, RunMetadata metadata)
    : graph_(std::move(graph)), cpds_(std::move(cpds)), metadata_(std::move(metadata)) {
  std::sort(cpds_.begin(), cpds_.end(),
            [](const CPDTable& a, const CPDTable& b) { return a.variable < b.variable; });
  for (std::size_t i = 0; i < cpds_.size(); ++i) {
    if (!cpd_index_.emplace(cpds_[i].variable, i).second) {
      throw DomainError(fmt::format("two tables for '{}'", cpds_[i].variable));
    }
  }
  for (const auto& n : graph_.nodes()) {
    auto it = cpd_index_.find(n);
    if (it == cpd_index_.end()) throw DomainError(fmt::format("no table for node '{}'", n));
    if (cpds_[it->second].parents != graph_.Parents(n)) {
      throw DomainError(fmt::format("table parents of '{}' do not match the graph", n));
    }
  }
  if (cpds_.size() != graph_.nodes().size()) {
    throw DomainError("table for a variable that is not a node");
  }
}

const CPDTable& CBN::Cpd(std::string_view node) const {
  auto it = cpd_index_.find(node);
  if (it == cpd_index_.end()) throw DomainError(fmt::format("unknown node '{}'", node));
  return cpds_[it->second];
}

double CBN::JointProbability(const std::map<std::string, std::string>& assignment) const {
  auto value_index = [&](const std::string& node) {
    auto it = assignment.find(node);
    if (it == assignment.end()) {
      throw DomainError(fmt::format("assignment has no value for node '{}'", node));
    }
    const auto& values = Cpd(node).values;
    auto pos = std::find(values.begin(), values.end(), it->second);
    if (pos == values.end()) {
      throw DomainError(fmt::format("'{}' is not a value of node '{}'", it->second, node));
    }
    return static_cast<std::size_t>(pos - values.begin());
  };
  for (const auto& [node, _] : assignment) {
    if (cpd_index_.find(node) == cpd_index_.end()) {
      throw DomainError(fmt::format("assignment names unknown node '{}'", node));
    }
  }
  double p = 1.0;
  for (const auto& t : cpds_) {
    std::vector<std::size_t> parent_assignment;
    for (const auto& parent : t.parents) parent_assignment.push_back(value_index(parent));
    p *= t.rows[t.RowIndex(parent_assignment)][value_index(t.variable)];
  }
  return p;
}

namespace {

std::string ToString(LinkProvenance p) {
  return p == LinkProvenance::kDirect ? "direct" : "inherited";
}

LinkProvenance ParseProvenance(const std::string& s) {
  if (s == "direct") return LinkProvenance::kDirect;
  if (s == "inherited") return LinkProvenance::kInherited;
  throw DomainError(fmt::format("unknown provenance '{}'", s));
}

json EdgeToJson(const GraphEdge& e) {
  json j = {{"cause", e.cause},
            {"effect", e.effect},
            {"cr_value", e.cr_value},
            {"provenance", ToString(e.provenance)}};
  if (e.source) j["source"] = {e.source->cause, e.source->effect};
  return j;
}

GraphEdge EdgeFromJson(const json& j) {
  GraphEdge e;
  e.cause = j.at("cause").get<std::string>();
  e.effect = j.at("effect").get<std::string>();
  e.cr_value = j.at("cr_value").get<double>();
  e.provenance = ParseProvenance(j.at("provenance").get<std::string>());
  if (j.contains("source")) {
    e.source = DirectedPair{j.at("source").at(0).get<std::string>(),
                            j.at("source").at(1).get<std::string>()};
  }
  return e;
}

std::string DotQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

constexpr int kSchemaVersion = 1;

}  // namespace

std::string CBN::ToJson() const {
  json nodes = json::array();
  for (const auto& n : graph_.nodes()) nodes.push_back({{"name", n}, {"values", Cpd(n).values}});
  json edges = json::array();
  for (const auto& e : graph_.edges()) edges.push_back(EdgeToJson(e));
  json cpds = json::array();
  for (const auto& t : cpds_) {
    cpds.push_back({{"variable", t.variable},
                    {"values", t.values},
                    {"parents", t.parents},
                    {"parent_values", t.parent_values},
                    {"rows", t.rows}});
  }
  json sidecar = json::array();
  for (const auto& s : graph_.bidirectional()) {
    sidecar.push_back({{"concept_a", s.concept_a},
                       {"concept_b", s.concept_b},
                       {"forward", s.forward_term},
                       {"reverse", s.reverse_term},
                       {"value", s.value},
                       {"label", ToString(s.label)}});
  }
  json removed = json::array();
  for (const auto& r : graph_.removed()) {
    json e = EdgeToJson(r.edge);
    e["reason"] = r.reason;
    removed.push_back(e);
  }
  json meta = {{"mu", metadata_.mu},
               {"weight_mode", metadata_.weight_mode},
               {"bidirectional_tau", metadata_.bidirectional_tau},
               {"unit", metadata_.unit},
               {"splitter", metadata_.splitter},
               {"lexicon_sha256", metadata_.lexicon_sha256},
               {"embeddings_sha256", metadata_.embeddings_sha256},
               {"stopwords_sha256", metadata_.stopwords_sha256}};
  json j = {{"schema_version", kSchemaVersion},
            {"nodes", nodes},
            {"edges", edges},
            {"cpds", cpds},
            {"bidirectional_sidecar", sidecar},
            {"removed_edges", removed},
            {"run_metadata", meta}};
  return j.dump(1) + "\n";
}

CBN CBN::FromJson(std::string_view contents, const std::string& source) {
  try {
    json j = json::parse(contents);
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw FormatError(source, 0,
                        fmt::format("unsupported schema_version {}", j.at("schema_version").dump()));
    }
    std::vector<std::string> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back(n.at("name").get<std::string>());
    std::vector<GraphEdge> edges;
    for (const auto& e : j.at("edges")) edges.push_back(EdgeFromJson(e));
    std::vector<CRScore> sidecar;
    for (const auto& s : j.at("bidirectional_sidecar")) {
      CRScore c;
      c.concept_a = s.at("concept_a").get<std::string>();
      c.concept_b = s.at("concept_b").get<std::string>();
      c.forward_term = s.at("forward").get<double>();
      c.reverse_term = s.at("reverse").get<double>();
      c.value = s.at("value").get<double>();
      c.label = ParseCausalLabel(s.at("label").get<std::string>());
      c.bidirectional = true;
      sidecar.push_back(std::move(c));
    }
    std::vector<RemovedEdge> removed;
    for (const auto& r : j.at("removed_edges")) {
      removed.push_back({EdgeFromJson(r), r.at("reason").get<std::string>()});
    }
    std::vector<CPDTable> cpds;
    for (const auto& c : j.at("cpds")) {
      CPDTable t;
      t.variable = c.at("variable").get<std::string>();
      t.values = c.at("values").get<std::vector<std::string>>();
      t.parents = c.at("parents").get<std::vector<std::string>>();
      t.parent_values = c.at("parent_values").get<std::vector<std::vector<std::string>>>();
      t.rows = c.at("rows").get<std::vector<std::vector<double>>>();
      cpds.push_back(std::move(t));
    }
    const json& m = j.at("run_metadata");
    RunMetadata meta;
    meta.mu = m.at("mu").get<double>();
    meta.weight_mode = m.at("weight_mode").get<std::string>();
    meta.bidirectional_tau = m.at("bidirectional_tau").get<double>();
    meta.unit = m.at("unit").get<std::string>();
    meta.splitter = m.at("splitter").get<std::string>();
    meta.lexicon_sha256 = m.at("lexicon_sha256").get<std::string>();
    meta.embeddings_sha256 = m.at("embeddings_sha256").get<std::string>();
    meta.stopwords_sha256 = m.at("stopwords_sha256").get<std::string>();
    return CBN(CausalGraph(std::move(nodes), std::move(edges), std::move(sidecar),
                           std::move(removed)),
               std::move(cpds), std::move(meta));
  } catch (const json::exception& e) {
    throw FormatError(source, 0, e.what());
  }
}

std::string CBN::ToDot() const {
  std::string out = "digraph cbn {\n";
  for (const auto& n : graph_.nodes()) out += fmt::format("  {};\n", DotQuote(n));
  for (const auto& e : graph_.edges()) {
    out += fmt::format("  {} -> {} [label={}{}];\n", DotQuote(e.cause), DotQuote(e.effect),
                       DotQuote(FormatDouble(e.cr_value)),
                       e.provenance == LinkProvenance::kInherited ? ", style=dashed" : "");
  }
  for (const auto& s : graph_.bidirectional()) {
    out += fmt::format("  // bidirectional: {} and {}\n", s.concept_a, s.concept_b);
  }
  out += "}\n";
  return out;
}

CBN BuildCbn(const CausalGraph& graph, const VariableStore& store,
             const CooccurrenceCounts& counts, const CpdOptions& options, RunMetadata metadata) {
  std::vector<CPDTable> cpds;
  for (const auto& n : graph.nodes()) {
    std::vector<const LinguisticVariable*> parents;
    for (const auto& p : graph.Parents(n)) parents.push_back(&store.Get(p));
    cpds.push_back(BuildCpd(store.Get(n), parents, counts, options));
  }
  return CBN(graph, std::move(cpds), std::move(metadata));
}

}  // namespace causenet
