#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "causenet/cbn.h"
#include "causenet/corpus.h"
#include "causenet/util.h"
#include "test_support.h"

namespace causenet {
namespace {

using Names = std::vector<std::string>;

CRScore Score(const std::string& a, const std::string& b, double value, double mu = 0.05) {
  CRScore s;
  s.concept_a = a;
  s.concept_b = b;
  s.forward_term = std::max(value, 0.0);
  s.reverse_term = std::max(-value, 0.0);
  s.value = s.forward_term - s.reverse_term;
  s.label = ClassifyRelation(s.value, mu);
  return s;
}

ValueEntry Value(const std::string& phrase) { return ValueEntry{phrase, 1, 1.0, 1.0, {phrase}}; }

LinguisticVariable Variable(const std::string& name, const Names& values) {
  LinguisticVariable v{name, {}};
  for (const auto& p : values) v.values.push_back(Value(p));
  return v;
}

TEST_CASE("counting in sentences") {
  IngestConfig c;
  const CorpusStore corpus = IngestTexts(
      {{"d", "Stress again. Insomnia again. Stress and insomnia. Nothing else."}}, c);
  const std::vector<TermSpec> terms = {{"stress", {{"stress"}}},
                                       {"insomnia", {{"insomnia"}}},
                                       {"absent", {{"zzz"}}}};
  const CooccurrenceCounts counts = CountCooccurrences(corpus, terms, CountUnit::kSentence);
  CHECK(counts.n_units() == 4);
  CHECK(counts.Single("stress") == 2);
  CHECK(counts.Single("insomnia") == 2);
  CHECK(counts.Pair("stress", "insomnia") == 1);
  CHECK(counts.Pair("insomnia", "stress") == 1);
  CHECK(counts.Single("absent") == 0);
  CHECK(counts.Pair("stress", "stress") == 2);

  const CooccurrenceCounts docs = CountCooccurrences(corpus, terms, CountUnit::kDocument);
  CHECK(docs.n_units() == 1);
  CHECK(docs.Pair("stress", "insomnia") == 1);
}

TEST_CASE("counts do not depend on worker count") {
  IngestConfig c;
  std::vector<std::pair<std::string, std::string>> texts;
  for (int i = 0; i < 30; ++i) {
    texts.emplace_back("d" + std::to_string(i),
                       i % 3 == 0 ? "Stress and insomnia. Insomnia." : "Stress alone.");
  }
  const CorpusStore corpus = IngestTexts(texts, c);
  const std::vector<TermSpec> terms = {{"stress", {{"stress"}}}, {"insomnia", {{"insomnia"}}}};
  const auto one = CountCooccurrences(corpus, terms, CountUnit::kSentence, 1);
  const auto many = CountCooccurrences(corpus, terms, CountUnit::kSentence, 6);
  CHECK(one.singles() == many.singles());
  CHECK(one.pairs() == many.pairs());
}

TEST_CASE("npmi examples") {
  CHECK(NpmiFromCounts(1, 2, 2, 4) == 0.0);
  CHECK(NpmiFromCounts(2, 2, 2, 4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(NpmiFromCounts(1, 5, 4, 10) ==
        doctest::Approx(std::log(0.5) / -std::log(0.1)).epsilon(1e-12));
  CHECK(NpmiFromCounts(1, 5, 4, 10) == doctest::Approx(-0.3010).epsilon(1e-4));
  CHECK(NpmiFromCounts(0, 3, 3, 10) == -1.0);
  CHECK(NpmiFromCounts(10, 10, 10, 10) == 1.0);
  CHECK_THROWS_AS(NpmiFromCounts(0, 0, 3, 10), UndefinedError);
  CHECK_THROWS_AS(NpmiFromCounts(0, 3, 0, 10), UndefinedError);
}

TEST_CASE("npmi is symmetric, bounded and zero at independence") {
  std::mt19937 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 200;
    const std::size_t cx = 1 + rng() % n;
    const std::size_t cy = 1 + rng() % n;
    const std::size_t lo = cx + cy > n ? cx + cy - n : 0;
    const std::size_t cxy = lo + rng() % (std::min(cx, cy) - lo + 1);
    const double a = NpmiFromCounts(cxy, cx, cy, n);
    CHECK(a == NpmiFromCounts(cxy, cy, cx, n));
    CHECK(a >= -1.0);
    CHECK(a <= 1.0);
    // At c_xy = n the table is both independent and perfectly co-occurring;
    // the p(x,y) = 1 convention wins there.
    if (cxy == n) CHECK(a == 1.0);
    else if (cxy * n == cx * cy) CHECK(a == 0.0);
  }
  CHECK(NpmiFromCounts(6, 12, 30, 60) == 0.0);
}

TEST_CASE("graph from scores without conflict") {
  const auto g = BuildCausalGraph({"A", "B", "C"}, {Score("A", "B", 0.4), Score("B", "C", 0.3)},
                                  nullptr, GraphOptions{});
  CHECK(g.edges().size() == 2);
  CHECK(g.IsAcyclic());
  CHECK(g.removed().empty());
}

TEST_CASE("cycle breaking removes the weakest edge") {
  WarningCapture warnings;
  const auto g = BuildCausalGraph(
      {"A", "B", "C"}, {Score("A", "B", 0.4), Score("B", "C", 0.3), Score("A", "C", -0.1)},
      nullptr, GraphOptions{});
  CHECK(g.IsAcyclic());
  REQUIRE(g.removed().size() == 1);
  CHECK(g.removed()[0].edge.cause == "C");
  CHECK(g.removed()[0].edge.effect == "A");
  CHECK(g.edges().size() == 2);
  CHECK(warnings.Contains("C"));
}

TEST_CASE("bidirectional pairs go to the sidecar") {
  CRScore both = Score("A", "B", 0.0);
  both.forward_term = 0.9;
  both.reverse_term = 0.85;
  both.value = both.forward_term - both.reverse_term;
  both.label = ClassifyRelation(both.value, 0.05);
  both.bidirectional = true;
  const auto g = BuildCausalGraph({"A", "B"}, {both}, nullptr, GraphOptions{});
  CHECK(g.edges().empty());
  REQUIRE(g.bidirectional().size() == 1);
  CHECK(g.bidirectional()[0] == both);
}

TEST_CASE("graph validation and ordering") {
  CHECK_THROWS_AS(CausalGraph({"A"}, {GraphEdge{"A", "A", 0.5}}), DomainError);
  CHECK_THROWS_AS(CausalGraph({"A"}, {GraphEdge{"A", "B", 0.5}}), DomainError);
  CHECK_THROWS_AS(CausalGraph({"A", "B"}, {GraphEdge{"A", "B", 0.5}, GraphEdge{"A", "B", 0.5}}),
                  DomainError);
  const CausalGraph g({"C", "B", "A"}, {GraphEdge{"C", "A", 0.5}, GraphEdge{"B", "A", 0.5}});
  CHECK(g.TopologicalOrder() == std::optional<Names>(Names{"B", "C", "A"}));
  CHECK(g.Parents("A") == Names{"B", "C"});
  const CausalGraph cyc({"A", "B"}, {GraphEdge{"A", "B", 0.5}, GraphEdge{"B", "A", 0.5}});
  CHECK_FALSE(cyc.IsAcyclic());
  CHECK(cyc.FindCycle().size() == 2);
}

TEST_CASE("random cyclic score sets end acyclic and deterministic") {
  std::mt19937 rng(31);
  const Names nodes = {"n0", "n1", "n2", "n3", "n4", "n5"};
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  WarningCapture quiet;
  for (int t = 0; t < 60; ++t) {
    std::vector<CRScore> scores;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        scores.push_back(Score(nodes[i], nodes[j], value(rng)));
      }
    }
    const auto g = BuildCausalGraph(nodes, scores, nullptr, GraphOptions{});
    CHECK(g.IsAcyclic());
    CHECK(BuildCausalGraph(nodes, scores, nullptr, GraphOptions{}) == g);
  }
}

TEST_CASE("inherited edges come from the lattice") {
  const FormalContext ctx({"disorder", "delusional disorder", "displeasure"},
                          {"schizophrenia", "paranoia", "sadness"},
                          {{"disorder", "schizophrenia"},
                           {"delusional disorder", "schizophrenia"},
                           {"delusional disorder", "paranoia"},
                           {"displeasure", "sadness"}});
  const ConceptLattice l = BuildLattice(ctx, EnumerateConcepts(ctx));
  const Names nodes = {"delusional disorder", "disorder", "displeasure"};
  const std::vector<CRScore> scores = {Score("disorder", "displeasure", 0.5)};
  const auto g = BuildCausalGraph(nodes, scores, &l, GraphOptions{});
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].cause == "delusional disorder");
  CHECK(g.edges()[0].provenance == LinkProvenance::kInherited);
  CHECK(g.edges()[0].cr_value == 0.5);
  GraphOptions no;
  no.inherit = false;
  CHECK(BuildCausalGraph(nodes, scores, &l, no).edges().size() == 1);
}

CooccurrenceCounts Counts(std::size_t n, std::map<std::string, std::size_t, std::less<>> singles,
                          std::map<std::pair<std::string, std::string>, std::size_t> pairs) {
  return CooccurrenceCounts(CountUnit::kSentence, n, std::move(singles), std::move(pairs));
}

TEST_CASE("cpd examples") {
  const auto root = Variable("r", {"x1", "x2"});
  const CPDTable marginal = BuildCpd(root, {}, Counts(8, {{"x1", 3}, {"x2", 1}}, {}));
  REQUIRE(marginal.rows.size() == 1);
  CHECK(marginal.rows[0][0] == doctest::Approx(0.75));
  CHECK(marginal.rows[0][1] == doctest::Approx(0.25));

  // x1 always with y (npmi 1); x2 independent of y (npmi 0).
  const auto parent = Variable("p", {"y"});
  const auto counts = Counts(4, {{"x1", 2}, {"x2", 2}, {"y", 2}}, {{{"x1", "y"}, 2}, {{"x2", "y"}, 1}});
  CHECK(Npmi("x1", "y", counts) == doctest::Approx(1.0));
  CHECK(Npmi("x2", "y", counts) == 0.0);
  const CPDTable row = BuildCpd(root, {&parent}, counts);
  REQUIRE(row.rows.size() == 1);
  CHECK(row.rows[0][0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(row.rows[0][1] == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // Equal npmi everywhere gives a uniform row.
  const auto flat = Counts(4, {{"x1", 2}, {"x2", 2}, {"y", 2}}, {{{"x1", "y"}, 1}, {{"x2", "y"}, 1}});
  const CPDTable uniform = BuildCpd(root, {&parent}, flat);
  CHECK(uniform.rows[0][0] == 0.5);
  CHECK(uniform.rows[0][1] == 0.5);

  // A zero row becomes uniform: x never occurs with y, so npmi -1 maps to 0.
  const auto never = Counts(4, {{"x1", 2}, {"x2", 2}, {"y", 2}}, {});
  CHECK(BuildCpd(root, {&parent}, never).rows[0] == std::vector<double>{0.5, 0.5});

  CHECK_THROWS_AS(BuildCpd(Variable("e", {}), {}, counts), DomainError);
  CpdOptions tiny;
  tiny.max_cells = 1;
  CHECK_THROWS_AS(BuildCpd(root, {&parent}, counts, tiny), DomainError);
}

TEST_CASE("row index is mixed radix, first parent most significant") {
  CPDTable t;
  t.parents = {"p", "q"};
  t.parent_values = {{"a", "b"}, {"c", "d", "e"}};
  CHECK(t.RowIndex({0, 0}) == 0);
  CHECK(t.RowIndex({0, 2}) == 2);
  CHECK(t.RowIndex({1, 0}) == 3);
  CHECK(t.RowIndex({1, 2}) == 5);
}

// Brute-force sum of the joint over every full assignment.
double JointSum(const CBN& cbn) {
  const auto& nodes = cbn.graph().nodes();
  std::map<std::string, std::string> assignment;
  std::function<double(std::size_t)> sum = [&](std::size_t i) -> double {
    if (i == nodes.size()) return cbn.JointProbability(assignment);
    double total = 0;
    for (const auto& v : cbn.Cpd(nodes[i]).values) {
      assignment[nodes[i]] = v;
      total += sum(i + 1);
    }
    return total;
  };
  return sum(0);
}

CBN ChainNetwork() {
  const VariableStore store({Variable("a", {"a1", "a2"}), Variable("b", {"b1", "b2", "b3"}),
                             Variable("c", {"c1", "c2"})});
  const CausalGraph g({"a", "b", "c"}, {GraphEdge{"a", "b", 0.4}, GraphEdge{"b", "c", 0.3}});
  const auto counts = Counts(
      10, {{"a1", 4}, {"a2", 6}, {"b1", 3}, {"b2", 5}, {"b3", 2}, {"c1", 7}, {"c2", 2}},
      {{{"a1", "b1"}, 3}, {{"a2", "b2"}, 4}, {{"a1", "b2"}, 1}, {{"b1", "c1"}, 2},
       {{"b3", "c2"}, 2}, {{"b2", "c1"}, 5}});
  RunMetadata meta;
  meta.lexicon_sha256 = "abc";
  return BuildCbn(g, store, counts, {}, meta);
}

TEST_CASE("joint probability") {
  const VariableStore one({Variable("a", {"a1", "a2"})});
  const CBN single = BuildCbn(CausalGraph({"a"}, {}), one, Counts(4, {{"a1", 3}, {"a2", 1}}, {}));
  CHECK(single.JointProbability({{"a", "a1"}}) == doctest::Approx(0.75));

  const VariableStore two({Variable("a", {"a1", "a2"}), Variable("b", {"b1", "b2"})});
  const CBN indep = BuildCbn(CausalGraph({"a", "b"}, {}), two,
                             Counts(4, {{"a1", 2}, {"a2", 2}, {"b1", 2}, {"b2", 2}}, {}));
  CHECK(indep.JointProbability({{"a", "a2"}, {"b", "b1"}}) == doctest::Approx(0.25));

  const CBN chain = ChainNetwork();
  CHECK(JointSum(chain) == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& cpd : chain.cpds()) {
    for (const auto& row : cpd.rows) {
      double s = 0;
      for (double p : row) {
        CHECK(p >= 0.0);
        s += p;
      }
      CHECK(std::fabs(s - 1.0) <= 1e-9);
    }
  }
  CHECK_THROWS_WITH_AS(chain.JointProbability({{"a", "a1"}, {"b", "b1"}}), doctest::Contains("c"),
                       DomainError);
  CHECK_THROWS_WITH_AS(chain.JointProbability({{"a", "a1"}, {"b", "bogus"}, {"c", "c1"}}),
                       doctest::Contains("b"), DomainError);
}

TEST_CASE("cpd parents must match the graph") {
  const CBN chain = ChainNetwork();
  std::vector<CPDTable> cpds = chain.cpds();
  cpds[1].parents.clear();
  CHECK_THROWS_AS(CBN(chain.graph(), cpds), DomainError);
  cpds.pop_back();
  CHECK_THROWS_AS(CBN(chain.graph(), cpds), DomainError);
}

TEST_CASE("export formats") {
  const VariableStore two({Variable("a", {"a1"}), Variable("b", {"b1"})});
  const CBN net = BuildCbn(CausalGraph({"a", "b"}, {GraphEdge{"a", "b", 0.5}}), two,
                           Counts(2, {{"a1", 1}, {"b1", 1}}, {{{"a1", "b1"}, 1}}));
  const std::string dot = net.ToDot();
  std::size_t arrows = 0;
  for (auto i = dot.find("->"); i != std::string::npos; i = dot.find("->", i + 2)) ++arrows;
  CHECK(arrows == 1);

  const CBN chain = ChainNetwork();
  const CBN back = CBN::FromJson(chain.ToJson());
  CHECK(back == chain);
  CHECK(back.ToJson() == chain.ToJson());
  CHECK(chain.ToJson().find("\"lexicon_sha256\"") != std::string::npos);
}

}  // namespace
}  // namespace causenet
