#include "causenet/causaldb.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "causenet/util.h"

namespace causenet {

using json = nlohmann::json;

std::string ToString(MarkerKind kind) {
  return kind == MarkerKind::kDiscourse ? "discourse" : "verb";
}
std::string ToString(MarkerOrder order) {
  return order == MarkerOrder::kCauseFirst ? "cause-first" : "effect-first";
}
std::string ToString(MarkerScope scope) {
  return scope == MarkerScope::kIntra ? "intra" : "inter";
}

namespace {

std::optional<MarkerKind> ParseKind(std::string_view s) {
  if (s == "discourse") return MarkerKind::kDiscourse;
  if (s == "verb") return MarkerKind::kVerb;
  return std::nullopt;
}

std::optional<MarkerOrder> ParseOrder(std::string_view s) {
  if (s == "cause-first") return MarkerOrder::kCauseFirst;
  if (s == "effect-first") return MarkerOrder::kEffectFirst;
  return std::nullopt;
}

std::optional<MarkerScope> ParseScope(std::string_view s) {
  if (s == "intra" || s == "intra-sentential") return MarkerScope::kIntra;
  if (s == "inter" || s == "inter-sentential") return MarkerScope::kInter;
  return std::nullopt;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string Marker::Text() const {
  std::string out;
  for (const auto& t : pattern) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

MarkerLexicon::MarkerLexicon(std::vector<Marker> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("empty lexicon");
  std::set<std::pair<std::string, MarkerKind>> seen;
  for (const auto& m : entries_) {
    if (m.pattern.empty()) throw DomainError("lexicon entry with empty pattern");
    for (const auto& t : m.pattern) {
      if (t != ToLowerAscii(t)) {
        throw DomainError(fmt::format("marker '{}' is not lowercase", m.Text()));
      }
    }
    if (!seen.insert({m.Text(), m.kind}).second) {
      throw DomainError(
          fmt::format("duplicate marker '{}' ({})", m.Text(), ToString(m.kind)));
    }
    longest_ = std::max(longest_, m.pattern.size());
  }
}

MarkerLexicon ParseMarkerLexicon(std::string_view contents, const std::string& source) {
  std::vector<Marker> entries;
  std::set<std::pair<std::string, MarkerKind>> seen;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;

    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(Trim(line.substr(start, tab == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 4) {
      throw FormatError(source, line_no,
                        fmt::format("expected 4 tab-separated columns, found {}", cols.size()));
    }
    Marker m;
    for (const auto& tok : TokenizeWithPunctuation(cols[0])) {
      if (!tok.is_word) {
        throw FormatError(source, line_no,
                          fmt::format("marker '{}' contains punctuation", cols[0]));
      }
      m.pattern.push_back(tok.text);
    }
    if (m.pattern.empty()) throw FormatError(source, line_no, "empty marker pattern");
    auto kind = ParseKind(cols[1]);
    if (!kind) throw FormatError(source, line_no, fmt::format("unknown kind '{}'", cols[1]));
    auto order = ParseOrder(cols[2]);
    if (!order) throw FormatError(source, line_no, fmt::format("unknown order '{}'", cols[2]));
    auto scope = ParseScope(cols[3]);
    if (!scope) throw FormatError(source, line_no, fmt::format("unknown scope '{}'", cols[3]));
    m.kind = *kind;
    m.order = *order;
    m.scope = *scope;
    if (!seen.insert({m.Text(), m.kind}).second) {
      throw FormatError(source, line_no,
                        fmt::format("duplicate marker '{}' ({})", m.Text(), cols[1]));
    }
    entries.push_back(std::move(m));
  }
  if (entries.empty()) throw FormatError(source, 0, "empty lexicon");
  return MarkerLexicon(std::move(entries));
}

MarkerLexicon CompileMarkerLexicon(const std::filesystem::path& path) {
  return ParseMarkerLexicon(ReadFile(path), path.string());
}

namespace {

bool IsClauseBoundary(const TextToken& t) {
  if (t.is_word) return false;
  const char c = t.text[0];
  return c == ',' || c == ';' || c == ':' || c == '.' || c == '!' || c == '?';
}

bool IsNegation(std::string_view w) {
  static const std::set<std::string_view> kNegations = {
      "not", "no", "never", "cannot", "neither", "nor", "without"};
  if (kNegations.count(w) > 0) return true;
  auto ends = [&](std::string_view s) {
    return w.size() > s.size() && w.substr(w.size() - s.size()) == s;
  };
  return ends("n't") || ends("n\xE2\x80\x99t");
}

struct Occurrence {
  std::size_t begin;
  std::size_t end;
  std::size_t marker;
};

// Non-overlapping marker occurrences, longest match first at each position.
std::vector<Occurrence> FindMarkers(const std::vector<TextToken>& tokens,
                                    const MarkerLexicon& lexicon) {
  std::vector<Occurrence> out;
  const auto& entries = lexicon.entries();
  for (std::size_t p = 0; p < tokens.size();) {
    std::optional<Occurrence> best;
    if (tokens[p].is_word) {
      for (std::size_t m = 0; m < entries.size(); ++m) {
        const auto& pat = entries[m].pattern;
        if (p + pat.size() > tokens.size()) continue;
        bool hit = true;
        for (std::size_t k = 0; k < pat.size() && hit; ++k) {
          hit = tokens[p + k].is_word && tokens[p + k].text == pat[k];
        }
        if (hit && (!best || pat.size() > best->end - best->begin)) {
          best = Occurrence{p, p + pat.size(), m};
        }
      }
    }
    if (best) {
      out.push_back(*best);
      p = best->end;
    } else {
      ++p;
    }
  }
  return out;
}

}  // namespace

std::vector<CauseEffectSpan> MarkerAnchoredSplitter::Split(
    const Sentence& sentence, const Sentence* previous,
    const MarkerLexicon& lexicon) const {
  std::vector<CauseEffectSpan> out;
  const std::string& raw = sentence.raw;
  const auto tokens = TokenizeWithPunctuation(raw);
  const auto occurrences = FindMarkers(tokens, lexicon);
  const std::size_t n = tokens.size();

  auto is_stop = [&](std::size_t i, std::size_t occ_index) {
    if (IsClauseBoundary(tokens[i])) return true;
    for (std::size_t k = 0; k < occurrences.size(); ++k) {
      if (k != occ_index && i >= occurrences[k].begin && i < occurrences[k].end) return true;
    }
    return false;
  };
  auto text_of = [&](std::size_t b, std::size_t e) -> std::string {
    std::size_t first = b;
    while (first < e && !tokens[first].is_word) ++first;
    std::size_t last = e;
    while (last > first && !tokens[last - 1].is_word) --last;
    if (first >= last) return {};
    return raw.substr(tokens[first].begin, tokens[last - 1].end - tokens[first].begin);
  };
  // The clause running forward from `from`, after skipping boundaries.
  auto clause_forward = [&](std::size_t from, std::size_t occ_index, std::size_t& stop) {
    std::size_t a = from;
    while (a < n && IsClauseBoundary(tokens[a])) ++a;
    std::size_t e = a;
    while (e < n && !is_stop(e, occ_index)) ++e;
    stop = e;
    return text_of(a, e);
  };

  for (std::size_t k = 0; k < occurrences.size(); ++k) {
    const Occurrence& occ = occurrences[k];
    const Marker& marker = lexicon.entries()[occ.marker];

    std::size_t words_seen = 0;
    bool negated = false;
    for (std::size_t i = occ.begin; i-- > 0 && words_seen < 3;) {
      if (!tokens[i].is_word) continue;
      ++words_seen;
      if (IsNegation(tokens[i].text)) negated = true;
    }
    if (negated) continue;

    std::size_t clause_start = occ.begin;
    while (clause_start > 0 && !IsClauseBoundary(tokens[clause_start - 1])) --clause_start;
    std::size_t left = clause_start;
    for (std::size_t j = 0; j < k; ++j) left = std::max(left, occurrences[j].end);
    const bool clause_initial = clause_start == occ.begin;
    if (marker.scope == MarkerScope::kInter && !clause_initial) continue;

    std::size_t after_stop = 0;
    std::string after = clause_forward(occ.end, k, after_stop);
    std::string before = text_of(left, occ.begin);
    bool uses_previous = false;

    if (before.empty() && clause_initial) {
      if (clause_start == 0) {
        if (marker.scope == MarkerScope::kInter) {
          if (previous == nullptr) continue;
          std::string_view prev = Trim(previous->raw);
          while (!prev.empty() && (prev.back() == '.' || prev.back() == '!' ||
                                   prev.back() == '?' || prev.back() == ' ')) {
            prev.remove_suffix(1);
          }
          before = std::string(prev);
          uses_previous = true;
        } else {
          // "Because A, B" reads as "B because A".
          std::size_t unused = 0;
          before = clause_forward(after_stop, k, unused);
        }
      } else {
        // The clause preceding the boundary in front of the marker.
        std::size_t e = clause_start;
        while (e > 0 && IsClauseBoundary(tokens[e - 1])) --e;
        std::size_t b = e;
        while (b > 0 && !is_stop(b - 1, k)) --b;
        before = text_of(b, e);
      }
    }
    if (before.empty() || after.empty()) continue;

    CauseEffectSpan span;
    span.marker = occ.marker;
    span.uses_previous = uses_previous;
    if (marker.order == MarkerOrder::kCauseFirst) {
      span.cause = std::move(before);
      span.effect = std::move(after);
    } else {
      span.cause = std::move(after);
      span.effect = std::move(before);
    }
    out.push_back(std::move(span));
  }
  return out;
}

std::vector<CauseEffectSpan> SplitCauseEffect(const Sentence& sentence,
                                              const Sentence* previous,
                                              const MarkerLexicon& lexicon) {
  return MarkerAnchoredSplitter().Split(sentence, previous, lexicon);
}

GammaDB::GammaDB(std::vector<GammaEntry> entries) : entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const GammaEntry& a, const GammaEntry& b) {
                     return a.provenance < b.provenance;
                   });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    std::sort(e.cause_stems.begin(), e.cause_stems.end());
    e.cause_stems.erase(std::unique(e.cause_stems.begin(), e.cause_stems.end()),
                        e.cause_stems.end());
    std::sort(e.effect_stems.begin(), e.effect_stems.end());
    e.effect_stems.erase(std::unique(e.effect_stems.begin(), e.effect_stems.end()),
                         e.effect_stems.end());
    if (e.cause_stems.empty() || e.effect_stems.empty()) {
      throw DomainError(fmt::format("gamma entry at {} has an empty side",
                                    e.provenance.ToString()));
    }
    for (const auto& c : e.cause_stems) {
      cause_postings_[c].push_back(i);
      for (const auto& f : e.effect_stems) ++pair_index_[{c, f}];
    }
    for (const auto& f : e.effect_stems) effect_postings_[f].push_back(i);
  }
}

std::size_t GammaDB::Count(std::string_view cause, std::string_view effect) const {
  auto it = pair_index_.find({std::string(cause), std::string(effect)});
  return it == pair_index_.end() ? 0 : it->second;
}

namespace {

std::vector<std::size_t> Intersect(
    const std::map<std::string, std::vector<std::size_t>, std::less<>>& postings,
    std::span<const std::string> stems) {
  if (stems.empty()) return {};
  std::vector<std::size_t> acc;
  bool first = true;
  for (const auto& s : stems) {
    auto it = postings.find(s);
    if (it == postings.end()) return {};
    if (first) {
      acc = it->second;
      first = false;
      continue;
    }
    std::vector<std::size_t> next;
    std::set_intersection(acc.begin(), acc.end(), it->second.begin(), it->second.end(),
                          std::back_inserter(next));
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

}  // namespace

std::vector<std::size_t> GammaDB::EntriesWithCause(std::span<const std::string> stems) const {
  return Intersect(cause_postings_, stems);
}

std::vector<std::size_t> GammaDB::EntriesWithEffect(std::span<const std::string> stems) const {
  return Intersect(effect_postings_, stems);
}

std::size_t GammaDB::PhraseCount(std::span<const std::string> cause,
                                 std::span<const std::string> effect) const {
  auto c = EntriesWithCause(cause);
  if (c.empty()) return 0;
  auto e = EntriesWithEffect(effect);
  std::vector<std::size_t> both;
  std::set_intersection(c.begin(), c.end(), e.begin(), e.end(), std::back_inserter(both));
  return both.size();
}

std::string GammaDB::ToJsonl() const {
  std::string out;
  for (const auto& e : entries_) {
    json j = {{"cause", e.cause_stems},
              {"effect", e.effect_stems},
              {"marker", e.marker.Text()},
              {"kind", ToString(e.marker.kind)},
              {"order", ToString(e.marker.order)},
              {"scope", ToString(e.marker.scope)},
              {"doc", e.provenance.doc_id},
              {"sentence", e.provenance.index}};
    if (e.previous) j["previous_sentence"] = e.previous->index;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string GammaDB::IndexToTsv() const {
  std::string out;
  for (const auto& [key, count] : pair_index_) {
    out += fmt::format("{}\t{}\t{}\n", key.first, key.second, count);
  }
  return out;
}

GammaDB GammaDB::FromJsonl(std::string_view contents, const std::string& source) {
  std::vector<GammaEntry> entries;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      GammaEntry e;
      e.cause_stems = j.at("cause").get<std::vector<std::string>>();
      e.effect_stems = j.at("effect").get<std::vector<std::string>>();
      const std::string marker = j.at("marker").get<std::string>();
      std::size_t start = 0;
      while (start < marker.size()) {
        std::size_t space = marker.find(' ', start);
        if (space == std::string::npos) space = marker.size();
        if (space > start) e.marker.pattern.push_back(marker.substr(start, space - start));
        start = space + 1;
      }
      auto kind = ParseKind(j.at("kind").get<std::string>());
      auto order = ParseOrder(j.at("order").get<std::string>());
      auto scope = ParseScope(j.at("scope").get<std::string>());
      if (!kind || !order || !scope) throw FormatError(source, line_no, "bad marker enum");
      e.marker.kind = *kind;
      e.marker.order = *order;
      e.marker.scope = *scope;
      e.provenance = {j.at("doc").get<std::string>(), j.at("sentence").get<std::size_t>()};
      if (j.contains("previous_sentence")) {
        e.previous = SentenceId{e.provenance.doc_id,
                                j.at("previous_sentence").get<std::size_t>()};
      }
      entries.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw FormatError(source, line_no, ex.what());
    }
  }
  try {
    return GammaDB(std::move(entries));
  } catch (const DomainError& ex) {
    throw FormatError(source, 0, ex.what());
  }
}

GammaDB BuildGamma(const CorpusStore& corpus, const MarkerLexicon& lexicon,
                   const TextNormalizer& normalizer, int workers,
                   const ClauseSplitter* splitter) {
  MarkerAnchoredSplitter fallback;
  const ClauseSplitter& split = splitter != nullptr ? *splitter : fallback;
  const auto& docs = corpus.documents();
  auto per_doc = ParallelMap(docs.size(), workers, [&](std::size_t d) {
    std::vector<GammaEntry> entries;
    const auto& sentences = docs[d].sentences;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const Sentence* prev = i > 0 ? &sentences[i - 1] : nullptr;
      for (const auto& span : split.Split(sentences[i], prev, lexicon)) {
        GammaEntry e;
        e.cause_stems = normalizer.Stems(span.cause);
        e.effect_stems = normalizer.Stems(span.effect);
        if (e.cause_stems.empty() || e.effect_stems.empty()) continue;
        e.marker = lexicon.entries()[span.marker];
        e.provenance = sentences[i].id;
        if (span.uses_previous && prev != nullptr) e.previous = prev->id;
        entries.push_back(std::move(e));
      }
    }
    return entries;
  });
  std::vector<GammaEntry> all;
  for (auto& entries : per_doc) {
    for (auto& e : entries) all.push_back(std::move(e));
  }
  return GammaDB(std::move(all));
}

std::size_t GammaCount(const GammaDB& db, std::string_view cause, std::string_view effect) {
  return db.Count(cause, effect);
}

}  // namespace causenet
