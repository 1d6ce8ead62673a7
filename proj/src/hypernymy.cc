#include "causenet/hypernymy.h"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "causenet/util.h"

namespace causenet {

using json = nlohmann::json;

IsAPattern::IsAPattern(std::string_view text) : text_(text) {
  auto tokens = TokenizeWithPunctuation(text);
  std::vector<int> slots;  // 0 = X, 1 = Y, per slot position
  std::vector<std::size_t> slot_positions;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view surface = text.substr(tokens[i].begin, tokens[i].end - tokens[i].begin);
    if (surface == "X" || surface == "Y") {
      slots.push_back(surface == "X" ? 0 : 1);
      slot_positions.push_back(i);
    }
  }
  if (slots.size() != 2 || slots[0] == slots[1] || slot_positions[0] != 0 ||
      slot_positions[1] != tokens.size() - 1 || tokens.size() < 3) {
    throw DomainError(fmt::format(
        "pattern '{}' must be X ... Y or Y ... X with literal tokens between", text));
  }
  hypernym_first_ = slots[0] == 0;
  for (std::size_t i = 1; i + 1 < tokens.size(); ++i) anchor_.push_back(tokens[i].text);
}

std::vector<IsAPattern> DefaultIsAPatterns() {
  static const char* kDefaults[] = {
      "X such as Y", "X including Y", "X, especially Y", "Y and other X",
      "Y or other X", "Y is a X",     "Y is an X",
  };
  std::vector<IsAPattern> out;
  for (const char* p : kDefaults) out.emplace_back(p);
  return out;
}

std::vector<IsAPattern> ParseIsAPatterns(std::string_view contents,
                                         const std::string& source) {
  std::vector<IsAPattern> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.emplace_back(line);
    } catch (const DomainError& e) {
      throw FormatError(source, line_no, e.what());
    }
  }
  if (out.empty()) throw FormatError(source, 0, "no IsA patterns");
  return out;
}

std::vector<IsAPattern> LoadIsAPatterns(const std::filesystem::path& path) {
  return ParseIsAPatterns(ReadFile(path), path.string());
}

std::string SingularizePhrase(std::string_view phrase) {
  std::string out(phrase);
  const std::size_t start = out.find_last_of(' ') == std::string::npos
                                ? 0
                                : out.find_last_of(' ') + 1;
  std::string head = out.substr(start);
  static const std::unordered_map<std::string, std::string> kIrregular = {
      {"children", "child"}, {"men", "man"},       {"women", "woman"},
      {"mice", "mouse"},     {"feet", "foot"},     {"teeth", "tooth"},
      {"criteria", "criterion"}, {"phenomena", "phenomenon"},
      {"species", "species"}, {"series", "series"}, {"people", "people"},
  };
  auto ends = [&](std::string_view s) {
    return head.size() >= s.size() && head.compare(head.size() - s.size(), s.size(), s) == 0;
  };
  if (auto it = kIrregular.find(head); it != kIrregular.end()) {
    head = it->second;
  } else if (head.size() <= 3 ||
             !std::all_of(head.begin(), head.end(),
                          [](char c) { return c >= 'a' && c <= 'z'; })) {
    // Too short to tell, or not a plain word.
  } else if (ends("ies") && head.size() > 4) {
    head.replace(head.size() - 3, 3, "y");
  } else if (ends("sses") || ends("xes") || ends("ches") || ends("shes") || ends("zzes")) {
    head.resize(head.size() - 2);
  } else if (ends("ss") || ends("us") || ends("is")) {
    // stress, stimulus, psychosis
  } else if (ends("s")) {
    head.pop_back();
  }
  return out.substr(0, start) + head;
}

namespace {

bool IsDeterminer(std::string_view t) { return t == "a" || t == "an" || t == "the"; }

bool IsListSeparator(const TextToken& t) {
  return t.text == "," || t.text == "and" || t.text == "or";
}

// Phrase of up to three non-stopword words starting next to `from` and
// running in direction `step`. Returns the index just past the phrase (in
// the direction of travel) via `next`.
std::optional<std::string> PhraseAt(const std::vector<TextToken>& tokens, long from,
                                    int step, const TextNormalizer& normalizer,
                                    long& next) {
  const long n = static_cast<long>(tokens.size());
  long i = from;
  if (i >= 0 && i < n && tokens[i].is_word && IsDeterminer(tokens[i].text)) i += step;
  std::vector<std::string> words;
  while (i >= 0 && i < n && words.size() < 3 && tokens[i].is_word &&
         !normalizer.IsStopword(tokens[i].text)) {
    words.push_back(tokens[i].text);
    i += step;
  }
  next = i;
  if (words.empty()) return std::nullopt;
  if (step < 0) std::reverse(words.begin(), words.end());
  std::string phrase = words.front();
  for (std::size_t k = 1; k < words.size(); ++k) phrase += ' ' + words[k];
  return SingularizePhrase(phrase);
}

// The phrase at `from` plus any coordinated phrases after it. Read
// rightwards, a list only extends as far as its last "and" / "or", so
// "A, B and C" yields three phrases while the comma in "A, persists" ends the
// list after A. Read leftwards the conjunction sits in the anchor ("A, B or
// other X"), so commas alone continue the list.
std::vector<std::string> PhraseListAt(const std::vector<TextToken>& tokens, long from,
                                      int step, const TextNormalizer& normalizer) {
  std::vector<std::string> out;
  const long n = static_cast<long>(tokens.size());
  long next = 0;
  auto first = PhraseAt(tokens, from, step, normalizer, next);
  if (!first) return out;
  out.push_back(*first);
  std::size_t keep = 1;
  while (true) {
    long i = next;
    bool separated = false;
    bool conjunction = false;
    while (i >= 0 && i < n && IsListSeparator(tokens[i])) {
      separated = true;
      conjunction = conjunction || tokens[i].is_word;
      i += step;
    }
    if (!separated) break;
    auto more = PhraseAt(tokens, i, step, normalizer, next);
    if (!more) break;
    out.push_back(*more);
    if (conjunction || step < 0) keep = out.size();
  }
  out.resize(keep);
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> MatchIsA(
    std::string_view sentence, const std::vector<IsAPattern>& patterns,
    const TextNormalizer& normalizer) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto tokens = TokenizeWithPunctuation(sentence);
  const long n = static_cast<long>(tokens.size());
  for (const auto& pattern : patterns) {
    const auto& anchor = pattern.anchor();
    const long len = static_cast<long>(anchor.size());
    for (long p = 0; p + len <= n; ++p) {
      bool hit = true;
      for (long k = 0; k < len && hit; ++k) hit = tokens[p + k].text == anchor[k];
      if (!hit) continue;
      long unused = 0;
      std::optional<std::string> hypernym;
      std::vector<std::string> hyponyms;
      if (pattern.hypernym_first()) {
        hypernym = PhraseAt(tokens, p - 1, -1, normalizer, unused);
        hyponyms = PhraseListAt(tokens, p + len, +1, normalizer);
      } else {
        hyponyms = PhraseListAt(tokens, p - 1, -1, normalizer);
        hypernym = PhraseAt(tokens, p + len, +1, normalizer, unused);
      }
      if (!hypernym) continue;
      for (const auto& hypo : hyponyms) {
        if (hypo == *hypernym) continue;
        if (normalizer.Stems(hypo).empty() || normalizer.Stems(*hypernym).empty()) continue;
        out.emplace_back(*hypernym, hypo);
      }
    }
  }
  return out;
}

std::vector<IsAPair> ExtractIsAPairs(const CorpusStore& corpus,
                                     const std::vector<IsAPattern>& patterns,
                                     const TextNormalizer& normalizer, int workers) {
  using Counts = std::map<std::pair<std::string, std::string>, std::size_t>;
  const auto& docs = corpus.documents();
  auto per_doc = ParallelMap(docs.size(), workers, [&](std::size_t d) {
    Counts counts;
    for (const auto& s : docs[d].sentences) {
      for (auto& pair : MatchIsA(s.raw, patterns, normalizer)) ++counts[pair];
    }
    return counts;
  });
  Counts total;
  for (const auto& counts : per_doc) {
    for (const auto& [key, c] : counts) total[key] += c;
  }
  std::map<std::string, std::size_t> per_variable;
  for (const auto& [key, c] : total) per_variable[key.first] += c;

  std::vector<IsAPair> out;
  out.reserve(total.size());
  for (const auto& [key, c] : total) {
    out.push_back({key.first, key.second, c,
                   static_cast<double>(c) / static_cast<double>(per_variable[key.first])});
  }
  std::sort(out.begin(), out.end(), [](const IsAPair& a, const IsAPair& b) {
    if (a.variable != b.variable) return a.variable < b.variable;
    if (a.count != b.count) return a.count > b.count;
    return a.value < b.value;
  });
  return out;
}

double LinguisticVariable::TotalWeight() const {
  double total = 0.0;
  for (const auto& v : values) total += v.weight;
  return total;
}

const ValueEntry* LinguisticVariable::FindValue(std::string_view phrase) const {
  for (const auto& v : values) {
    if (v.phrase == phrase) return &v;
  }
  return nullptr;
}

VariableStore::VariableStore(std::vector<LinguisticVariable> variables) {
  for (auto& var : variables) {
    if (var.values.empty()) {
      throw DomainError(fmt::format("variable '{}' has no values", var.name));
    }
    std::set<std::string> seen;
    for (const auto& v : var.values) {
      if (!seen.insert(v.phrase).second) {
        throw DomainError(
            fmt::format("variable '{}' lists value '{}' twice", var.name, v.phrase));
      }
      if (v.stems.empty()) {
        throw DomainError(fmt::format("value '{}' of '{}' has no stems", v.phrase, var.name));
      }
    }
    std::string name = var.name;
    if (!variables_.emplace(name, std::move(var)).second) {
      throw DomainError(fmt::format("duplicate variable '{}'", name));
    }
  }
}

const LinguisticVariable* VariableStore::Find(std::string_view name) const {
  auto it = variables_.find(std::string(name));
  return it == variables_.end() ? nullptr : &it->second;
}

const LinguisticVariable& VariableStore::Get(std::string_view name) const {
  const auto* v = Find(name);
  if (v == nullptr) throw DomainError(fmt::format("unknown variable '{}'", name));
  return *v;
}

std::vector<std::string> VariableStore::Names() const {
  std::vector<std::string> names;
  names.reserve(variables_.size());
  for (const auto& [name, _] : variables_) names.push_back(name);
  return names;
}

std::string VariableStore::ToJsonl() const {
  std::string out;
  for (const auto& [name, var] : variables_) {
    json values = json::array();
    for (const auto& v : var.values) {
      values.push_back({{"value", v.phrase},
                        {"count", v.count},
                        {"plausibility", v.plausibility},
                        {"weight", v.weight}});
    }
    out += json{{"variable", name}, {"values", values}}.dump();
    out += '\n';
  }
  return out;
}

VariableStore VariableStore::FromJsonl(std::string_view contents,
                                       const TextNormalizer& normalizer,
                                       const std::string& source) {
  std::vector<LinguisticVariable> vars;
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
      LinguisticVariable var;
      var.name = j.at("variable").get<std::string>();
      for (const auto& jv : j.at("values")) {
        ValueEntry v;
        v.phrase = jv.at("value").get<std::string>();
        v.count = jv.at("count").get<std::size_t>();
        v.plausibility = jv.at("plausibility").get<double>();
        v.weight = jv.at("weight").get<double>();
        v.stems = normalizer.Stems(v.phrase);
        var.values.push_back(std::move(v));
      }
      vars.push_back(std::move(var));
    } catch (const json::exception& e) {
      throw FormatError(source, line_no, e.what());
    }
  }
  try {
    return VariableStore(std::move(vars));
  } catch (const DomainError& e) {
    throw FormatError(source, 0, e.what());
  }
}

VariableStore BuildVariableStore(const std::vector<IsAPair>& pairs,
                                 const VariableStoreOptions& options,
                                 const EmbeddingStore& embeddings,
                                 const TextNormalizer& normalizer) {
  if (options.min_plausibility < 0.0) {
    throw DomainError("min_plausibility must be nonnegative");
  }
  std::map<std::string, LinguisticVariable> building;
  for (const auto& pair : pairs) {
    if (pair.count < options.min_count || pair.plausibility < options.min_plausibility) {
      continue;
    }
    ValueEntry entry;
    entry.phrase = pair.value;
    entry.count = pair.count;
    entry.plausibility = pair.plausibility;
    entry.stems = normalizer.Stems(pair.value);
    if (entry.stems.empty()) {
      Warn(fmt::format("value '{}' of '{}' has no content stems; skipped", pair.value,
                       pair.variable));
      continue;
    }
    try {
      entry.weight = ValueWeight(pair.value, pair.variable, embeddings, options.weight_mode);
    } catch (const OovError& e) {
      Warn(fmt::format("value '{}' of '{}' skipped: {}", pair.value, pair.variable,
                       e.what()));
      continue;
    }
    auto& var = building[pair.variable];
    var.name = pair.variable;
    if (var.FindValue(entry.phrase) != nullptr) continue;
    var.values.push_back(std::move(entry));
  }
  std::vector<LinguisticVariable> vars;
  vars.reserve(building.size());
  for (auto& [_, var] : building) vars.push_back(std::move(var));
  return VariableStore(std::move(vars));
}

}  // namespace causenet
