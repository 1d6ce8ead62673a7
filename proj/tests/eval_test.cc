#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "causenet/causaldb.h"
#include "causenet/corpus.h"
#include "causenet/eval.h"
#include "causenet/util.h"
#include "oracles.h"
#include "test_support.h"

namespace causenet {
namespace {

using testing::DefaultNormalizer;
using testing::SourcePath;

constexpr CausalLabel kNeg = CausalLabel::kBCausesA;
constexpr CausalLabel kZero = CausalLabel::kNone;
constexpr CausalLabel kPos = CausalLabel::kACausesB;

TEST_CASE("annotation parsing") {
  const auto rows = ParseAnnotations("conceptA\tconceptB\tlabel\nstress\tinsomnia\t1\n"
                                     "a\tb\t-1\n\nc\td\t0\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == AnnotatedTuple{"stress", "insomnia", kPos});
  CHECK(rows[1].label == kNeg);
  CHECK(rows[2].label == kZero);
  CHECK(ParseAnnotations("stress\tinsomnia\t1\n").size() == 1);

  try {
    ParseAnnotations("a\tb\t1\nc\td\t2\n", "gold.tsv");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(ParseAnnotations("a\tb\t1\na\tb\t1\n"), FormatError);
  CHECK_THROWS_AS(ParseAnnotations("a\tb\n"), FormatError);
}

TEST_CASE("mirrored annotation rows") {
  WarningCapture warnings;
  CHECK(ParseAnnotations("a\tb\t1\nb\ta\t-1\n").size() == 2);
  CHECK(warnings.Contains("a"));
  CHECK_THROWS_AS(ParseAnnotations("a\tb\t1\nb\ta\t1\n"), FormatError);
}

std::vector<AnnotatedTuple> TenTuples() {
  std::vector<AnnotatedTuple> gold;
  for (int i = 0; i < 3; ++i) gold.push_back({"n" + std::to_string(i), "x", kNeg});
  for (int i = 0; i < 4; ++i) gold.push_back({"z" + std::to_string(i), "x", kZero});
  for (int i = 0; i < 3; ++i) gold.push_back({"p" + std::to_string(i), "x", kPos});
  return gold;
}

TEST_CASE("hand computed ten-tuple report") {
  const auto gold = TenTuples();
  // Confusion rows (gold -1, 0, 1): (2, 1, 0), (1, 2, 1), (0, 0, 3).
  const std::vector<CausalLabel> predicted = {kNeg, kNeg,  kZero, kZero, kZero,
                                              kPos, kNeg,  kPos,  kPos,  kPos};
  PredictionMap p;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    p[{gold[i].concept_a, gold[i].concept_b}] = predicted[i];
  }
  const EvalReport r = Evaluate(p, gold);
  CHECK(r.total == 10);
  CHECK(r.confusion[0] == std::array<std::size_t, 3>{2, 1, 0});
  CHECK(r.confusion[1] == std::array<std::size_t, 3>{1, 2, 1});
  CHECK(r.confusion[2] == std::array<std::size_t, 3>{0, 0, 3});
  CHECK(r.accuracy == doctest::Approx(0.7));
  CHECK(r.per_class_f1[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.per_class_f1[1] == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(r.per_class_f1[2] == doctest::Approx(6.0 / 7).epsilon(1e-12));
  CHECK(r.macro_f1 == doctest::Approx(44.0 / 63).epsilon(1e-12));
  CHECK(ReportToJson(r)["macro_f1"].get<double>() == r.macro_f1);
  CHECK(ReportToText(r, "test").find("macro") != std::string::npos);
}

TEST_CASE("perfect, missing and mirrored predictions") {
  const auto gold = TenTuples();
  PredictionMap perfect;
  for (const auto& t : gold) perfect[{t.concept_a, t.concept_b}] = t.label;
  const EvalReport r = Evaluate(perfect, gold);
  CHECK(r.accuracy == 1.0);
  CHECK(r.macro_f1 == 1.0);

  PredictionMap mirrored;
  for (const auto& t : gold) mirrored[{t.concept_b, t.concept_a}] = Mirror(t.label);
  CHECK(Evaluate(mirrored, gold) == r);

  const EvalReport none = Evaluate({}, gold);
  CHECK(none.missing_predictions == 10);
  CHECK(none.confusion[0][1] + none.confusion[1][1] + none.confusion[2][1] == 10);
  CHECK_THROWS_AS(Evaluate({}, {}), DomainError);
}

TEST_CASE("majority predictor scores F1(majority) / 3") {
  const auto gold = TenTuples();
  CHECK(MajorityLabel(gold) == kZero);
  const EvalReport r = Evaluate(ConstantPredictions(gold, kZero), gold);
  CHECK(r.per_class_f1[0] == 0.0);
  CHECK(r.per_class_f1[2] == 0.0);
  CHECK(r.macro_f1 == doctest::Approx(r.per_class_f1[1] / 3).epsilon(1e-15));
  // Ties prefer 0, then -1.
  CHECK(MajorityLabel({{"a", "b", kNeg}, {"c", "d", kZero}}) == kZero);
  CHECK(MajorityLabel({{"a", "b", kNeg}, {"c", "d", kPos}}) == kNeg);
}

std::vector<CRScore> SweepScores(const std::vector<AnnotatedTuple>& gold) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<CRScore> scores;
  for (const auto& t : gold) {
    CRScore s;
    s.concept_a = t.concept_a;
    s.concept_b = t.concept_b;
    s.value = v(rng);
    s.forward_term = std::max(s.value, 0.0);
    s.reverse_term = std::max(-s.value, 0.0);
    scores.push_back(s);
  }
  return scores;
}

TEST_CASE("sweep shape") {
  const auto gold = TenTuples();
  const auto scores = SweepScores(gold);
  const auto curve = SweepMu(scores, gold, DefaultMuGrid());
  REQUIRE(curve.size() == 20);
  CHECK(curve[1].mu == 0.05);
  for (const auto& p : curve) CHECK(p.majority_f1 == curve[0].majority_f1);

  const auto single = SweepMu(scores, gold, {0.05});
  const EvalReport direct = Evaluate(ClassifyScores(scores, 0.05), gold);
  CHECK(single[0].macro_f1 == direct.macro_f1);
  CHECK(single[0].accuracy == direct.accuracy);
  CHECK(curve[1].macro_f1 == direct.macro_f1);

  CHECK_THROWS_AS(SweepMu(scores, gold, {}), DomainError);
  CHECK_THROWS_AS(SweepMu(scores, gold, {1.0}), DomainError);
  const std::string tsv = SweepToTsv(curve);
  CHECK(tsv.rfind("mu\tmacro_f1\tmajority_f1\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 21);
}

TEST_CASE("a high threshold approaches the all-zero predictor") {
  const auto gold = TenTuples();
  std::vector<CRScore> scores = SweepScores(gold);
  for (auto& s : scores) {
    s.value *= 0.9;
    s.forward_term = std::max(s.value, 0.0);
    s.reverse_term = std::max(-s.value, 0.0);
  }
  const auto curve = SweepMu(scores, gold, {0.95});
  CHECK(curve[0].macro_f1 == Evaluate(ConstantPredictions(gold, kZero), gold).macro_f1);
}

ValueEntry Value(const std::string& phrase) {
  return ValueEntry{phrase, 1, 1.0, 1.0, DefaultNormalizer().Stems(phrase)};
}

struct BaselineFixture {
  CorpusStore corpus;
  GammaDB gamma;
  VariableStore store;
};

BaselineFixture MakeFixture(const std::vector<std::string>& texts) {
  IngestConfig c;
  c.stopwords = DefaultNormalizer().stopwords();
  std::vector<std::pair<std::string, std::string>> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) docs.emplace_back("d" + std::to_string(i), texts[i]);
  BaselineFixture f;
  f.corpus = IngestTexts(docs, c);
  f.gamma = BuildGamma(f.corpus, CompileMarkerLexicon(SourcePath("data/markers.tsv")),
                       DefaultNormalizer());
  f.store = VariableStore({LinguisticVariable{"a", {Value("alcohol")}},
                           LinguisticVariable{"b", {Value("insomnia")}},
                           LinguisticVariable{"c", {Value("fatigue")}}});
  return f;
}

TEST_CASE("baseline examples") {
  const auto f = MakeFixture({"Alcohol causes insomnia.", "Alcohol then insomnia.",
                              "Alcohol before insomnia.", "Fatigue and alcohol.",
                              "Alcohol and fatigue."});
  const HeuristicBaselines b(f.gamma, f.corpus, f.store);
  CHECK(b.FrequencyCount("a", "b") == 1);
  CHECK(b.FrequencyCount("b", "a") == 0);
  CHECK(b.Decide(Baseline::kFrequency, "a", "b").label == kPos);
  CHECK(b.Decide(Baseline::kFrequency, "b", "a").label == kNeg);
  CHECK(b.PrecedenceCount("a", "b") == 3);
  CHECK(b.PrecedenceCount("b", "a") == 0);
  CHECK(b.Decide(Baseline::kPrecedence, "a", "b").label == kPos);
  // "a" and "c" each come first once.
  CHECK(b.PrecedenceCount("a", "c") == 1);
  CHECK(b.PrecedenceCount("c", "a") == 1);
  CHECK(b.Decide(Baseline::kPrecedence, "a", "c").label == kZero);
  CHECK(b.Decide(Baseline::kFrequency, "a", "c").label == kZero);
}

TEST_CASE("baseline labels mirror under argument swap") {
  const auto f = MakeFixture({"Alcohol causes insomnia. Insomnia and fatigue.",
                              "Fatigue results in insomnia because of alcohol.",
                              "Alcohol and fatigue, then insomnia.", "Insomnia."});
  const HeuristicBaselines b(f.gamma, f.corpus, f.store);
  for (Baseline base : AllBaselines()) {
    for (const char* x : {"a", "b", "c"}) {
      for (const char* y : {"a", "b", "c"}) {
        const auto xy = b.Decide(base, x, y);
        const auto yx = b.Decide(base, y, x);
        CHECK_MESSAGE(xy.label == Mirror(yx.label), ToString(base));
        CHECK(xy.forward == yx.reverse);
      }
    }
    const auto p = b.Predict(base, {{"a", "b"}, {"b", "c"}});
    CHECK(p.size() == 2);
  }
}

TEST_CASE("fleiss kappa") {
  // Three items, four raters: P-bar = 1/2, P-e = 31/72, kappa = 5/41.
  const std::vector<std::vector<std::size_t>> fixture = {{4, 0, 0}, {2, 2, 0}, {1, 1, 2}};
  CHECK(std::fabs(FleissKappa(fixture) - 5.0 / 41) <= 1e-9);
  CHECK(std::fabs(oracle::FleissKappa({{4, 0, 0}, {2, 2, 0}, {1, 1, 2}}) - 5.0 / 41) <= 1e-12);

  CHECK(FleissKappa({{3, 0}, {0, 3}, {3, 0}}) == 1.0);
  CHECK(FleissKappa({{3, 0}, {3, 0}}) == 1.0);

  CHECK_THROWS_AS(FleissKappa({{3, 0}, {1, 1}}), DomainError);
  CHECK_THROWS_AS(FleissKappa({{1, 0}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(FleissKappa({}), DomainError);
}

TEST_CASE("fleiss kappa under relabeling and random ratings") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> cat(0, 2);
  std::vector<std::vector<std::size_t>> m(3000, std::vector<std::size_t>(3, 0));
  std::vector<std::vector<int>> as_int(3000, std::vector<int>(3, 0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (int r = 0; r < 5; ++r) {
      const std::size_t c = cat(rng);
      ++m[i][c];
      ++as_int[i][c];
    }
  }
  const double k = FleissKappa(m);
  CHECK(std::fabs(k) <= 0.05);
  CHECK(std::fabs(k - oracle::FleissKappa(as_int)) <= 1e-9);
  auto permuted = m;
  for (auto& row : permuted) std::rotate(row.begin(), row.begin() + 1, row.end());
  CHECK(std::fabs(FleissKappa(permuted) - k) <= 1e-12);
}

}  // namespace
}  // namespace causenet
