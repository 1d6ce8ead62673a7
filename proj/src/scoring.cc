#include "causenet/scoring.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "causenet/util.h"

namespace causenet {

std::string ToString(WeightMode mode) {
  return mode == WeightMode::kCosine ? "cosine" : "one-minus-cosine";
}

WeightMode ParseWeightMode(std::string_view text) {
  if (text == "cosine") return WeightMode::kCosine;
  if (text == "one-minus-cosine") return WeightMode::kOneMinusCosine;
  throw DomainError(fmt::format("unknown weight mode '{}'", text));
}

double ValueWeight(std::string_view value, std::string_view variable,
                   const EmbeddingStore& embeddings, WeightMode mode) {
  const double cos = Similarity(value, variable, embeddings);
  if (mode == WeightMode::kCosine) return std::max(0.0, cos);
  return std::clamp(1.0 - cos, 0.0, 1.0);
}

std::string ToString(CausalLabel label) {
  switch (label) {
    case CausalLabel::kACausesB:
      return "A-causes-B";
    case CausalLabel::kBCausesA:
      return "B-causes-A";
    case CausalLabel::kNone:
      break;
  }
  return "none";
}

CausalLabel ParseCausalLabel(std::string_view text) {
  if (text == "A-causes-B") return CausalLabel::kACausesB;
  if (text == "B-causes-A") return CausalLabel::kBCausesA;
  if (text == "none") return CausalLabel::kNone;
  throw DomainError(fmt::format("unknown label '{}'", text));
}

CausalLabel Mirror(CausalLabel label) {
  return static_cast<CausalLabel>(-static_cast<int>(label));
}

void ScoringConfig::Validate() const {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainError(fmt::format("mu {} not in [0, 1)", mu));
  if (!(bidirectional_tau > 0.0 && bidirectional_tau <= 1.0)) {
    throw DomainError(fmt::format("bidirectional_tau {} not in (0, 1]", bidirectional_tau));
  }
  if (!(bidirectional_tau > mu)) {
    throw DomainError(
        fmt::format("bidirectional_tau {} must exceed mu {}", bidirectional_tau, mu));
  }
}

double DirectedTerm(const LinguisticVariable& cause, const LinguisticVariable& effect,
                    const GammaDB& gamma) {
  const double total = cause.TotalWeight();
  if (!(total > 0.0)) {
    throw UndefinedError(
        fmt::format("causal term undefined: weights of '{}' sum to zero", cause.name));
  }
  std::vector<std::vector<std::size_t>> effect_entries;
  effect_entries.reserve(effect.values.size());
  for (const auto& u : effect.values) effect_entries.push_back(gamma.EntriesWithEffect(u.stems));

  double hit_weight = 0.0;
  for (const auto& v : cause.values) {
    const auto cause_entries = gamma.EntriesWithCause(v.stems);
    if (cause_entries.empty()) continue;
    bool hit = false;
    for (const auto& eff : effect_entries) {
      auto it = cause_entries.begin();
      auto jt = eff.begin();
      while (it != cause_entries.end() && jt != eff.end()) {
        if (*it == *jt) {
          hit = true;
          break;
        }
        if (*it < *jt) ++it; else ++jt;
      }
      if (hit) break;
    }
    if (hit) hit_weight += v.weight;
  }
  return std::clamp(hit_weight / total, 0.0, 1.0);
}

CausalLabel ClassifyRelation(double value, double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) throw DomainError(fmt::format("mu {} not in [0, 1)", mu));
  if (!(value >= -1.0 && value <= 1.0)) {
    throw DomainError(fmt::format("causal value {} not in [-1, 1]", value));
  }
  if (value > mu) return CausalLabel::kACausesB;
  if (value < -mu) return CausalLabel::kBCausesA;
  return CausalLabel::kNone;
}

bool DetectBidirectional(double forward_term, double reverse_term, double tau) {
  return std::min(forward_term, reverse_term) >= tau;
}

CRScore CausalRelation(const LinguisticVariable& a, const LinguisticVariable& b,
                       const GammaDB& gamma, const ScoringConfig& config) {
  CRScore s;
  s.concept_a = a.name;
  s.concept_b = b.name;
  s.forward_term = DirectedTerm(a, b, gamma);
  s.reverse_term = DirectedTerm(b, a, gamma);
  s.value = s.forward_term - s.reverse_term;
  s.label = ClassifyRelation(s.value, config.mu);
  s.bidirectional = DetectBidirectional(s.forward_term, s.reverse_term,
                                        config.bidirectional_tau);
  return s;
}

CRScore Mirror(const CRScore& score) {
  CRScore m = score;
  std::swap(m.concept_a, m.concept_b);
  std::swap(m.forward_term, m.reverse_term);
  m.value = m.forward_term - m.reverse_term;
  m.label = Mirror(score.label);
  return m;
}

std::vector<CRScore> ScoreAllPairs(const VariableStore& store, const GammaDB& gamma,
                                   const ScoringConfig& config, int workers) {
  config.Validate();
  std::vector<const LinguisticVariable*> vars;
  for (const auto& [name, var] : store.variables()) {
    if (var.TotalWeight() > 0.0) {
      vars.push_back(&var);
    } else {
      Warn(fmt::format("variable '{}' has zero total weight; not scored", name));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) pairs.emplace_back(i, j);
  }
  return ParallelMap(pairs.size(), workers, [&](std::size_t k) {
    return CausalRelation(*vars[pairs[k].first], *vars[pairs[k].second], gamma, config);
  });
}

std::string ScoresToTsv(const std::vector<CRScore>& scores) {
  std::string out = "conceptA\tconceptB\tforward\treverse\tvalue\tlabel\tbidirectional\n";
  for (const auto& s : scores) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", s.concept_a, s.concept_b,
                       FormatDouble(s.forward_term), FormatDouble(s.reverse_term),
                       FormatDouble(s.value), ToString(s.label),
                       s.bidirectional ? "true" : "false");
  }
  return out;
}

namespace {

double ParseDoubleField(std::string_view s, const std::string& source, std::size_t line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw FormatError(source, line, fmt::format("bad number '{}'", s));
  }
  return v;
}

}  // namespace

std::vector<CRScore> ScoresFromTsv(std::string_view contents, const std::string& source) {
  std::vector<CRScore> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.rfind("conceptA\t", 0) == 0) continue;
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                      : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 7) {
      throw FormatError(source, line_no, fmt::format("expected 7 columns, found {}", cols.size()));
    }
    CRScore s;
    s.concept_a = std::string(cols[0]);
    s.concept_b = std::string(cols[1]);
    s.forward_term = ParseDoubleField(cols[2], source, line_no);
    s.reverse_term = ParseDoubleField(cols[3], source, line_no);
    s.value = ParseDoubleField(cols[4], source, line_no);
    try {
      s.label = ParseCausalLabel(cols[5]);
    } catch (const DomainError& e) {
      throw FormatError(source, line_no, e.what());
    }
    if (cols[6] != "true" && cols[6] != "false") {
      throw FormatError(source, line_no, "bidirectional must be true or false");
    }
    s.bidirectional = cols[6] == "true";
    out.push_back(std::move(s));
  }
  return out;
}

ScoreTable::ScoreTable(const std::vector<CRScore>& scores) : scores_(scores) {
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    index_[{scores_[i].concept_a, scores_[i].concept_b}] = i;
  }
}

std::optional<CRScore> ScoreTable::Find(std::string_view a, std::string_view b) const {
  if (auto it = index_.find(std::pair<std::string, std::string>(a, b)); it != index_.end()) {
    return scores_[it->second];
  }
  if (auto it = index_.find(std::pair<std::string, std::string>(b, a)); it != index_.end()) {
    return Mirror(scores_[it->second]);
  }
  return std::nullopt;
}

}  // namespace causenet
