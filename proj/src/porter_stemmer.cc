#include "causenet/porter_stemmer.h"

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

namespace causenet {
namespace {

bool IsVowelLetter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// A 'y' is a consonant at the start of a word or after a vowel.
std::vector<bool> ConsonantFlags(std::string_view w) {
  std::vector<bool> flags(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (IsVowelLetter(w[i])) {
      flags[i] = false;
    } else if (w[i] == 'y') {
      flags[i] = i == 0 ? true : !flags[i - 1];
    } else {
      flags[i] = true;
    }
  }
  return flags;
}

bool IsConsonant(std::string_view w, std::size_t i) { return ConsonantFlags(w)[i]; }

// m in [C](VC){m}[V].
int Measure(std::string_view stem) {
  auto flags = ConsonantFlags(stem);
  int m = 0;
  for (std::size_t i = 1; i < flags.size(); ++i) {
    if (!flags[i - 1] && flags[i]) ++m;
  }
  return m;
}

bool ContainsVowel(std::string_view stem) {
  auto flags = ConsonantFlags(stem);
  return std::find(flags.begin(), flags.end(), false) != flags.end();
}

bool EndsDoubleConsonant(std::string_view w) {
  return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
         IsConsonant(w, w.size() - 1);
}

// *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
bool EndsCvc(std::string_view w) {
  if (w.size() < 3) return false;
  auto flags = ConsonantFlags(w);
  const std::size_t n = w.size();
  const char last = w[n - 1];
  return flags[n - 3] && !flags[n - 2] && flags[n - 1] && last != 'w' &&
         last != 'x' && last != 'y';
}

bool EndsWith(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

using Condition = bool (*)(std::string_view);

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;  // null means unconditional
};

bool PositiveMeasure(std::string_view stem) { return Measure(stem) > 0; }
bool MeasureAboveOne(std::string_view stem) { return Measure(stem) > 1; }
bool IonCondition(std::string_view stem) {
  return Measure(stem) > 1 && !stem.empty() &&
         (stem.back() == 's' || stem.back() == 't');
}

// The longest suffix listed first wins; if its condition fails, no shorter
// suffix is tried.
template <std::size_t N>
std::string ApplyRules(std::string word, const std::array<Rule, N>& rules) {
  for (const Rule& rule : rules) {
    if (!EndsWith(word, rule.suffix)) continue;
    std::string_view stem(word.data(), word.size() - rule.suffix.size());
    if (rule.condition == nullptr || rule.condition(stem)) {
      return std::string(stem) + std::string(rule.replacement);
    }
    return word;
  }
  return word;
}

std::string Step1a(std::string w) {
  static constexpr std::array<Rule, 4> kRules{{
      {"sses", "ss", nullptr},
      {"ies", "i", nullptr},
      {"ss", "ss", nullptr},
      {"s", "", nullptr},
  }};
  return ApplyRules(std::move(w), kRules);
}

std::string Step1b(std::string w) {
  if (EndsWith(w, "eed")) {
    std::string_view stem(w.data(), w.size() - 3);
    if (Measure(stem) > 0) return std::string(stem) + "ee";
    return w;
  }
  std::string stem;
  bool stripped = false;
  for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
    if (EndsWith(w, suffix)) {
      std::string_view candidate(w.data(), w.size() - suffix.size());
      if (ContainsVowel(candidate)) {
        stem = std::string(candidate);
        stripped = true;
        break;
      }
    }
  }
  if (!stripped) return w;

  if (EndsWith(stem, "at") || EndsWith(stem, "bl") || EndsWith(stem, "iz")) {
    return stem + "e";
  }
  if (EndsDoubleConsonant(stem)) {
    const char last = stem.back();
    if (last != 'l' && last != 's' && last != 'z') stem.pop_back();
    return stem;
  }
  if (Measure(stem) == 1 && EndsCvc(stem)) return stem + "e";
  return stem;
}

std::string Step1c(std::string w) {
  if (EndsWith(w, "y")) {
    std::string_view stem(w.data(), w.size() - 1);
    if (ContainsVowel(stem)) return std::string(stem) + "i";
  }
  return w;
}

std::string Step2(std::string w) {
  static constexpr std::array<Rule, 20> kRules{{
      {"ational", "ate", PositiveMeasure},
      {"tional", "tion", PositiveMeasure},
      {"enci", "ence", PositiveMeasure},
      {"anci", "ance", PositiveMeasure},
      {"izer", "ize", PositiveMeasure},
      {"abli", "able", PositiveMeasure},
      {"alli", "al", PositiveMeasure},
      {"entli", "ent", PositiveMeasure},
      {"eli", "e", PositiveMeasure},
      {"ousli", "ous", PositiveMeasure},
      {"ization", "ize", PositiveMeasure},
      {"ation", "ate", PositiveMeasure},
      {"ator", "ate", PositiveMeasure},
      {"alism", "al", PositiveMeasure},
      {"iveness", "ive", PositiveMeasure},
      {"fulness", "ful", PositiveMeasure},
      {"ousness", "ous", PositiveMeasure},
      {"aliti", "al", PositiveMeasure},
      {"iviti", "ive", PositiveMeasure},
      {"biliti", "ble", PositiveMeasure},
  }};
  return ApplyRules(std::move(w), kRules);
}

std::string Step3(std::string w) {
  static constexpr std::array<Rule, 7> kRules{{
      {"icate", "ic", PositiveMeasure},
      {"ative", "", PositiveMeasure},
      {"alize", "al", PositiveMeasure},
      {"iciti", "ic", PositiveMeasure},
      {"ical", "ic", PositiveMeasure},
      {"ful", "", PositiveMeasure},
      {"ness", "", PositiveMeasure},
  }};
  return ApplyRules(std::move(w), kRules);
}

std::string Step4(std::string w) {
  static constexpr std::array<Rule, 19> kRules{{
      {"al", "", MeasureAboveOne},    {"ance", "", MeasureAboveOne},
      {"ence", "", MeasureAboveOne},  {"er", "", MeasureAboveOne},
      {"ic", "", MeasureAboveOne},    {"able", "", MeasureAboveOne},
      {"ible", "", MeasureAboveOne},  {"ant", "", MeasureAboveOne},
      {"ement", "", MeasureAboveOne}, {"ment", "", MeasureAboveOne},
      {"ent", "", MeasureAboveOne},   {"ion", "", IonCondition},
      {"ou", "", MeasureAboveOne},    {"ism", "", MeasureAboveOne},
      {"ate", "", MeasureAboveOne},   {"iti", "", MeasureAboveOne},
      {"ous", "", MeasureAboveOne},   {"ive", "", MeasureAboveOne},
      {"ize", "", MeasureAboveOne},
  }};
  return ApplyRules(std::move(w), kRules);
}

std::string Step5a(std::string w) {
  if (!EndsWith(w, "e")) return w;
  std::string_view stem(w.data(), w.size() - 1);
  const int m = Measure(stem);
  if (m > 1 || (m == 1 && !EndsCvc(stem))) return std::string(stem);
  return w;
}

std::string Step5b(std::string w) {
  if (EndsWith(w, "ll") && Measure(std::string_view(w.data(), w.size() - 1)) > 1) {
    w.pop_back();
  }
  return w;
}

}  // namespace

std::string PorterStem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  if (!std::all_of(word.begin(), word.end(),
                   [](char c) { return c >= 'a' && c <= 'z'; })) {
    return std::string(word);
  }
  std::string w(word);
  w = Step1a(std::move(w));
  w = Step1b(std::move(w));
  w = Step1c(std::move(w));
  w = Step2(std::move(w));
  w = Step3(std::move(w));
  w = Step4(std::move(w));
  w = Step5a(std::move(w));
  w = Step5b(std::move(w));
  return w;
}

}  // namespace causenet
