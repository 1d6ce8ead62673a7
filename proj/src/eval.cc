#include "causenet/eval.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "causenet/util.h"

namespace causenet {

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                    : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

std::optional<CausalLabel> ParseNumericLabel(std::string_view s) {
  if (s == "1" || s == "+1") return CausalLabel::kACausesB;
  if (s == "0") return CausalLabel::kNone;
  if (s == "-1") return CausalLabel::kBCausesA;
  return std::nullopt;
}

bool LooksNumeric(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.';
  });
}

}  // namespace

std::vector<AnnotatedTuple> ParseAnnotations(std::string_view contents,
                                             const std::string& source) {
  std::vector<AnnotatedTuple> out;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool first_row = true;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto cols = SplitTabs(line);
    if (cols.size() != 3) {
      throw FormatError(source, line_no,
                        fmt::format("expected 3 tab-separated columns, found {}", cols.size()));
    }
    const bool header = first_row && !LooksNumeric(cols[2]);
    first_row = false;
    if (header) continue;
    auto label = ParseNumericLabel(cols[2]);
    if (!label) {
      throw FormatError(source, line_no,
                        fmt::format("label '{}' is not one of -1, 0, 1", cols[2]));
    }
    AnnotatedTuple t{std::string(cols[0]), std::string(cols[1]), *label};
    if (t.concept_a.empty() || t.concept_b.empty()) {
      throw FormatError(source, line_no, "empty concept name");
    }
    if (!seen.emplace(std::make_pair(t.concept_a, t.concept_b), out.size()).second) {
      throw FormatError(source, line_no,
                        fmt::format("duplicate pair ({}, {})", t.concept_a, t.concept_b));
    }
    if (auto it = seen.find({t.concept_b, t.concept_a}); it != seen.end() &&
                                                         t.concept_a != t.concept_b) {
      const AnnotatedTuple& other = out[it->second];
      Warn(fmt::format("{}:{}: pair ({}, {}) also annotated in reverse", source, line_no,
                       t.concept_a, t.concept_b));
      if (other.label != Mirror(t.label)) {
        throw FormatError(source, line_no,
                          fmt::format("label {} of ({}, {}) contradicts reverse label {}",
                                      static_cast<int>(t.label), t.concept_a, t.concept_b,
                                      static_cast<int>(other.label)));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<AnnotatedTuple> LoadAnnotations(const std::filesystem::path& path) {
  return ParseAnnotations(ReadFile(path), path.string());
}

PredictionMap ClassifyScores(const std::vector<CRScore>& scores, double mu) {
  PredictionMap out;
  for (const auto& s : scores) out[{s.concept_a, s.concept_b}] = ClassifyRelation(s.value, mu);
  return out;
}

EvalReport Evaluate(const PredictionMap& predictions, const std::vector<AnnotatedTuple>& gold) {
  if (gold.empty()) throw DomainError("no gold annotations to evaluate against");
  EvalReport r;
  r.total = gold.size();
  for (const auto& t : gold) {
    CausalLabel predicted = CausalLabel::kNone;
    if (auto it = predictions.find({t.concept_a, t.concept_b}); it != predictions.end()) {
      predicted = it->second;
    } else if (auto jt = predictions.find({t.concept_b, t.concept_a});
               jt != predictions.end()) {
      predicted = Mirror(jt->second);
    } else {
      ++r.missing_predictions;
    }
    ++r.confusion[LabelIndex(t.label)][LabelIndex(predicted)];
  }
  std::size_t correct = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    correct += r.confusion[c][c];
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      predicted += r.confusion[k][c];
      actual += r.confusion[c][k];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    r.precision[c] = predicted == 0 ? 0.0 : tp / static_cast<double>(predicted);
    r.recall[c] = actual == 0 ? 0.0 : tp / static_cast<double>(actual);
    const std::size_t denom = predicted + actual;
    r.per_class_f1[c] = denom == 0 ? 0.0 : 2.0 * tp / static_cast<double>(denom);
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(r.total);
  r.macro_f1 = (r.per_class_f1[0] + r.per_class_f1[1] + r.per_class_f1[2]) / 3.0;
  return r;
}

CausalLabel MajorityLabel(const std::vector<AnnotatedTuple>& gold) {
  std::array<std::size_t, 3> counts{};
  for (const auto& t : gold) ++counts[LabelIndex(t.label)];
  CausalLabel best = CausalLabel::kNone;
  for (CausalLabel l : {CausalLabel::kBCausesA, CausalLabel::kACausesB}) {
    if (counts[LabelIndex(l)] > counts[LabelIndex(best)]) best = l;
  }
  return best;
}

PredictionMap ConstantPredictions(const std::vector<AnnotatedTuple>& gold, CausalLabel label) {
  PredictionMap out;
  for (const auto& t : gold) out[{t.concept_a, t.concept_b}] = label;
  return out;
}

std::vector<SweepPoint> SweepMu(const std::vector<CRScore>& scores,
                                const std::vector<AnnotatedTuple>& gold,
                                const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("empty mu grid");
  const double majority =
      Evaluate(ConstantPredictions(gold, MajorityLabel(gold)), gold).macro_f1;
  std::vector<SweepPoint> out;
  for (double mu : grid) {
    if (!(mu >= 0.0 && mu < 1.0)) throw DomainError(fmt::format("mu {} not in [0, 1)", mu));
    const EvalReport r = Evaluate(ClassifyScores(scores, mu), gold);
    out.push_back({mu, r.macro_f1, r.accuracy, majority});
  }
  return out;
}

std::string SweepToTsv(const std::vector<SweepPoint>& curve) {
  std::string out = "mu\tmacro_f1\tmajority_f1\n";
  for (const auto& p : curve) {
    out += fmt::format("{}\t{}\t{}\n", FormatDouble(p.mu), FormatDouble(p.macro_f1),
                       FormatDouble(p.majority_f1));
  }
  return out;
}

std::vector<double> DefaultMuGrid() {
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

std::string ToString(Baseline baseline) {
  switch (baseline) {
    case Baseline::kFrequency:
      return "frequency";
    case Baseline::kPrecedence:
      return "precedence";
    case Baseline::kPmi:
      return "pmi";
    case Baseline::kPrecedencePmi:
      break;
  }
  return "precedence-pmi";
}

const std::vector<Baseline>& AllBaselines() {
  static const std::vector<Baseline> all = {Baseline::kFrequency, Baseline::kPrecedence,
                                            Baseline::kPmi, Baseline::kPrecedencePmi};
  return all;
}

HeuristicBaselines::HeuristicBaselines(const GammaDB& gamma, const CorpusStore& corpus,
                                       const VariableStore& store, CountUnit unit)
    : gamma_(gamma), store_(store) {
  std::vector<std::vector<std::string_view>> units;
  for (const auto& doc : corpus.documents()) {
    if (unit == CountUnit::kDocument) units.emplace_back();
    for (const auto& s : doc.sentences) {
      if (unit == CountUnit::kSentence) units.emplace_back();
      units.back().insert(units.back().end(), s.stems.begin(), s.stems.end());
    }
  }
  n_units_ = units.size();
  for (const auto& [name, var] : store.variables()) {
    auto& spans = mentions_[name];
    for (std::size_t u = 0; u < units.size(); ++u) {
      const auto& stems = units[u];
      for (const auto& value : var.values) {
        const auto& phrase = value.stems;
        if (phrase.empty() || phrase.size() > stems.size()) continue;
        for (std::size_t p = 0; p + phrase.size() <= stems.size(); ++p) {
          if (!std::equal(phrase.begin(), phrase.end(), stems.begin() + p)) continue;
          auto [it, inserted] = spans.emplace(u, Span{p, p});
          if (!inserted) {
            it->second.first = std::min(it->second.first, p);
            it->second.last = std::max(it->second.last, p);
          }
        }
      }
    }
  }
}

std::size_t HeuristicBaselines::PrecedenceCount(std::string_view a, std::string_view b) const {
  auto ia = mentions_.find(a);
  auto ib = mentions_.find(b);
  if (ia == mentions_.end() || ib == mentions_.end()) return 0;
  std::size_t count = 0;
  for (const auto& [unit, span] : ia->second) {
    auto jt = ib->second.find(unit);
    if (jt != ib->second.end() && span.first < jt->second.last) ++count;
  }
  return count;
}

std::size_t HeuristicBaselines::FrequencyCount(std::string_view a, std::string_view b) const {
  const auto* va = store_.Find(a);
  const auto* vb = store_.Find(b);
  if (va == nullptr || vb == nullptr) return 0;
  std::set<std::size_t> entries;
  for (const auto& x : va->values) {
    auto causes = gamma_.EntriesWithCause(x.stems);
    if (causes.empty()) continue;
    for (const auto& y : vb->values) {
      auto effects = gamma_.EntriesWithEffect(y.stems);
      std::set_intersection(causes.begin(), causes.end(), effects.begin(), effects.end(),
                            std::inserter(entries, entries.end()));
    }
  }
  return entries.size();
}

BaselineDecision HeuristicBaselines::Decide(Baseline baseline, std::string_view a,
                                            std::string_view b) const {
  BaselineDecision d;
  auto mention_count = [&](std::string_view v) -> std::size_t {
    auto it = mentions_.find(v);
    return it == mentions_.end() ? 0 : it->second.size();
  };
  auto joint_count = [&]() -> std::size_t {
    auto ia = mentions_.find(a);
    auto ib = mentions_.find(b);
    if (ia == mentions_.end() || ib == mentions_.end()) return 0;
    std::size_t n = 0;
    for (const auto& [unit, _] : ia->second) n += ib->second.count(unit);
    return n;
  };
  // NPMI with an undefined marginal counts as no association.
  auto npmi = [&](std::size_t joint) {
    const std::size_t ca = mention_count(a);
    const std::size_t cb = mention_count(b);
    if (ca == 0 || cb == 0) return 0.0;
    return NpmiFromCounts(joint, ca, cb, n_units_);
  };
  switch (baseline) {
    case Baseline::kFrequency:
      d.forward = static_cast<double>(FrequencyCount(a, b));
      d.reverse = static_cast<double>(FrequencyCount(b, a));
      break;
    case Baseline::kPrecedence:
      d.forward = static_cast<double>(PrecedenceCount(a, b));
      d.reverse = static_cast<double>(PrecedenceCount(b, a));
      break;
    case Baseline::kPmi:
      if (npmi(joint_count()) > 0.0) {
        d.forward = static_cast<double>(PrecedenceCount(a, b));
        d.reverse = static_cast<double>(PrecedenceCount(b, a));
      }
      break;
    case Baseline::kPrecedencePmi:
      d.forward = npmi(PrecedenceCount(a, b));
      d.reverse = npmi(PrecedenceCount(b, a));
      break;
  }
  if (d.forward > d.reverse) {
    d.label = CausalLabel::kACausesB;
  } else if (d.forward < d.reverse) {
    d.label = CausalLabel::kBCausesA;
  }
  return d;
}

PredictionMap HeuristicBaselines::Predict(
    Baseline baseline, const std::vector<std::pair<std::string, std::string>>& pairs) const {
  PredictionMap out;
  for (const auto& [a, b] : pairs) out[{a, b}] = Decide(baseline, a, b).label;
  return out;
}

double FleissKappa(const std::vector<std::vector<std::size_t>>& ratings) {
  if (ratings.empty()) throw DomainError("no items to compute agreement over");
  const std::size_t k = ratings.front().size();
  if (k == 0) throw DomainError("no categories");
  std::size_t n = 0;
  for (std::size_t c : ratings.front()) n += c;
  if (n < 2) throw DomainError("agreement needs at least two raters per item");
  std::vector<double> column(k, 0.0);
  double p_bar = 0.0;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    const auto& row = ratings[i];
    if (row.size() != k) {
      throw DomainError(fmt::format("item {} has {} categories, expected {}", i, row.size(), k));
    }
    std::size_t raters = 0;
    double squares = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      raters += row[j];
      squares += static_cast<double>(row[j]) * static_cast<double>(row[j]);
      column[j] += static_cast<double>(row[j]);
    }
    if (raters != n) {
      throw DomainError(fmt::format("item {} has {} ratings, expected {}", i, raters, n));
    }
    p_bar += (squares - static_cast<double>(n)) / (static_cast<double>(n) * (n - 1));
  }
  const double items = static_cast<double>(ratings.size());
  p_bar /= items;
  double p_e = 0.0;
  for (double c : column) {
    const double p = c / (items * static_cast<double>(n));
    p_e += p * p;
  }
  if (p_e >= 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

nlohmann::json ReportToJson(const EvalReport& report) {
  auto by_label = [](const std::array<double, 3>& v) {
    return nlohmann::json{{"-1", v[0]}, {"0", v[1]}, {"1", v[2]}};
  };
  return {{"total", report.total},
          {"missing_predictions", report.missing_predictions},
          {"accuracy", report.accuracy},
          {"macro_f1", report.macro_f1},
          {"per_class_f1", by_label(report.per_class_f1)},
          {"precision", by_label(report.precision)},
          {"recall", by_label(report.recall)},
          {"confusion", report.confusion}};
}

std::string ReportToText(const EvalReport& report, std::string_view title) {
  std::string out = fmt::format("{}\n", title);
  out += fmt::format("  tuples {}  missing predictions {}\n", report.total,
                     report.missing_predictions);
  out += fmt::format("  accuracy {:.4f}  macro-F1 {:.4f}\n", report.accuracy, report.macro_f1);
  out += "  gold\\pred      -1      0      1      F1\n";
  const char* names[] = {"-1", "0", "1"};
  for (std::size_t g = 0; g < 3; ++g) {
    out += fmt::format("  {:>9} {:>6} {:>6} {:>6}  {:.4f}\n", names[g], report.confusion[g][0],
                       report.confusion[g][1], report.confusion[g][2], report.per_class_f1[g]);
  }
  return out;
}

}  // namespace causenet
