#ifndef CAUSENET_TEXT_H_
#define CAUSENET_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace causenet {

using StopwordSet = std::unordered_set<std::string>;

// One token of a raw string, with byte offsets into it. Word tokens are
// lowercased; punctuation tokens are single characters.
struct TextToken {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool is_word = false;
};

// ASCII letters and digits, plus any byte of a multi-byte UTF-8 sequence so
// that accented words stay whole.
bool IsWordByte(char c);

std::string ToLowerAscii(std::string_view s);

// Lowercased alphanumeric runs; everything else separates tokens.
std::vector<std::string> WordTokens(std::string_view text);

// Words and punctuation with offsets. An apostrophe between two word bytes is
// kept inside the word ("doesn't"), so contractions survive as single tokens.
std::vector<TextToken> TokenizeWithPunctuation(std::string_view text);

// Offset of the first byte that is not part of a well-formed UTF-8 sequence.
std::optional<std::size_t> FindInvalidUtf8(std::string_view bytes);

// One token per line; blank lines and lines starting with '#' are ignored.
StopwordSet LoadStopwords(const std::filesystem::path& path);
StopwordSet ParseStopwords(std::string_view contents);

// Stopword removal plus Porter stemming.
class TextNormalizer {
 public:
  explicit TextNormalizer(StopwordSet stopwords);

  bool IsStopword(std::string_view token) const;
  std::vector<std::string> Stems(std::string_view text) const;
  std::vector<std::string> StemTokens(const std::vector<std::string>& tokens) const;
  const StopwordSet& stopwords() const { return stopwords_; }

 private:
  StopwordSet stopwords_;
};

// Pluggable sentence splitter.
class SentenceSegmenter {
 public:
  virtual ~SentenceSegmenter() = default;
  virtual std::vector<std::string> Split(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

// Splits after runs of . ! ? that are followed by whitespace, and on blank
// lines. A single period after a known abbreviation or a lone letter does
// not end a sentence. Whitespace inside a sentence is collapsed.
class RuleSegmenter : public SentenceSegmenter {
 public:
  RuleSegmenter();
  explicit RuleSegmenter(std::vector<std::string> abbreviations);

  std::vector<std::string> Split(std::string_view text) const override;
  std::string name() const override { return "rule-based"; }

 private:
  std::unordered_set<std::string> abbreviations_;
};

}  // namespace causenet

#endif  // CAUSENET_TEXT_H_
