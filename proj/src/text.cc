#include "causenet/text.h"

#include <cctype>
#include <cstdint>

#include "causenet/porter_stemmer.h"
#include "causenet/util.h"

namespace causenet {

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsWordByte(text[j])) ++j;
    tokens.push_back(ToLowerAscii(text.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

std::vector<TextToken> TokenizeWithPunctuation(std::string_view text) {
  std::vector<TextToken> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!IsWordByte(c)) {
      tokens.push_back({std::string(1, c), i, i + 1, false});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size()) {
      if (IsWordByte(text[j])) {
        ++j;
      } else if (text[j] == '\'' && j + 1 < text.size() && IsWordByte(text[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    tokens.push_back({ToLowerAscii(text.substr(i, j - i)), i, j, true});
    i = j;
  }
  return tokens;
}

std::optional<std::size_t> FindInvalidUtf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return i;
    }
    i += len;
  }
  return std::nullopt;
}

StopwordSet ParseStopwords(std::string_view contents) {
  StopwordSet out;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    if (!line.empty() && line.front() != '#') out.insert(ToLowerAscii(line));
    pos = eol + 1;
  }
  return out;
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  const std::string bytes = ReadFile(path);
  if (auto bad = FindInvalidUtf8(bytes)) {
    throw FormatError(path.string(), 0,
                      "invalid UTF-8 at byte offset " + std::to_string(*bad));
  }
  return ParseStopwords(bytes);
}

TextNormalizer::TextNormalizer(StopwordSet stopwords)
    : stopwords_(std::move(stopwords)) {}

bool TextNormalizer::IsStopword(std::string_view token) const {
  return stopwords_.count(std::string(token)) > 0;
}

std::vector<std::string> TextNormalizer::StemTokens(
    const std::vector<std::string>& tokens) const {
  std::vector<std::string> stems;
  stems.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (IsStopword(tok)) continue;
    std::string stem = PorterStem(tok);
    // Stems may collide with a stopword ("ones" -> "on").
    if (stem.empty() || IsStopword(stem)) continue;
    stems.push_back(std::move(stem));
  }
  return stems;
}

std::vector<std::string> TextNormalizer::Stems(std::string_view text) const {
  return StemTokens(WordTokens(text));
}

namespace {

const std::vector<std::string>& DefaultAbbreviations() {
  static const std::vector<std::string> kAbbrev = {
      "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "e.g", "i.e",
      "cf", "al", "fig", "figs", "eq", "approx", "dept", "vol", "ca"};
  return kAbbrev;
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace

RuleSegmenter::RuleSegmenter() : RuleSegmenter(DefaultAbbreviations()) {}

RuleSegmenter::RuleSegmenter(std::vector<std::string> abbreviations) {
  for (auto& a : abbreviations) abbreviations_.insert(ToLowerAscii(a));
}

std::vector<std::string> RuleSegmenter::Split(std::string_view text) const {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = CollapseWhitespace(text.substr(start, end - start));
    if (!s.empty()) sentences.push_back(std::move(s));
    start = end;
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      // Blank line: paragraph boundary.
      std::size_t j = i + 1;
      while (j < n && IsSpace(text[j]) && text[j] != '\n') ++j;
      if (j < n && text[j] == '\n') {
        emit(i);
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (!IsTerminator(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && IsTerminator(text[j])) ++j;
    const bool single_period = (j - i == 1 && c == '.');
    while (j < n && IsCloser(text[j])) ++j;
    if (j < n && !IsSpace(text[j])) {
      i = j;
      continue;
    }
    if (single_period) {
      // The word before the period, dots included ("e.g").
      std::size_t w = i;
      while (w > start && (IsWordByte(text[w - 1]) || text[w - 1] == '.')) --w;
      std::string prev = ToLowerAscii(text.substr(w, i - w));
      const bool lone_letter =
          prev.size() == 1 && std::isalpha(static_cast<unsigned char>(prev[0]));
      if (abbreviations_.count(prev) > 0 || lone_letter) {
        i = j;
        continue;
      }
    }
    emit(j);
    i = j;
  }
  emit(n);
  return sentences;
}

}  // namespace causenet
