#include <doctest.h>

#include <fstream>
#include <string>

#include "causenet/corpus.h"
#include "causenet/porter_stemmer.h"
#include "causenet/text.h"
#include "test_support.h"

namespace causenet {
namespace {

using testing::SourcePath;

TEST_CASE("porter stemmer matches the reference word list") {
  std::ifstream in(SourcePath("tests/data/porter_reference.tsv"));
  REQUIRE(in.good());
  std::string line;
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string word = line.substr(0, tab);
    const std::string expected = line.substr(tab + 1);
    const std::string got = PorterStem(word);
    if (got != expected) {
      ++mismatches;
      if (mismatches <= 10) MESSAGE(word << ": expected " << expected << ", got " << got);
    }
    ++checked;
  }
  CHECK(checked > 10000);
  CHECK(mismatches == 0);
}

TEST_CASE("porter stemmer classic cases") {
  CHECK(PorterStem("caresses") == "caress");
  CHECK(PorterStem("ponies") == "poni");
  CHECK(PorterStem("relational") == "relat");
  CHECK(PorterStem("generalization") == "gener");
  CHECK(PorterStem("hopping") == "hop");
  CHECK(PorterStem("agreed") == "agre");
  CHECK(PorterStem("drugs") == "drug");
  CHECK(PorterStem("symptoms") == "symptom");
  CHECK(PorterStem("cause") == "caus");
  // Short and non-alphabetic words pass through.
  CHECK(PorterStem("is") == "is");
  CHECK(PorterStem("covid19") == "covid19");
}

TEST_CASE("porter stemming is not idempotent, so stems are computed once from tokens") {
  // Re-stemming a stem can strip further ("cause" -> "caus" -> "cau").
  CHECK(PorterStem(PorterStem("cause")) == "cau");
  // Every stored stem is exactly the stem of a non-stopword token.
  const TextNormalizer norm = testing::DefaultNormalizer();
  const Sentence s = PreprocessSentence("Stress causes insomnia because of worry.", norm);
  std::vector<std::string> expected;
  for (const auto& t : s.tokens) {
    if (!norm.IsStopword(t)) expected.push_back(PorterStem(t));
  }
  CHECK(s.stems == expected);
}

TEST_CASE("word tokens are lowercased alphanumeric runs") {
  CHECK(WordTokens("Slower-acting drugs, e.g. SSRIs!") ==
        std::vector<std::string>{"slower", "acting", "drugs", "e", "g", "ssris"});
  CHECK(WordTokens("").empty());
  CHECK(WordTokens("café au lait") == std::vector<std::string>{"café", "au", "lait"});
}

TEST_CASE("tokenizer keeps punctuation and contractions") {
  const auto toks = TokenizeWithPunctuation("It doesn't, really.");
  REQUIRE(toks.size() == 5);
  CHECK(toks[1].text == "doesn't");
  CHECK(toks[1].is_word);
  CHECK(toks[2].text == ",");
  CHECK_FALSE(toks[2].is_word);
  CHECK(toks[4].text == ".");
  CHECK(toks[1].begin == 3);
  CHECK(toks[1].end == 10);
}

TEST_CASE("invalid utf-8 is located") {
  CHECK_FALSE(FindInvalidUtf8("plain ascii").has_value());
  CHECK_FALSE(FindInvalidUtf8("na\xc3\xafve").has_value());
  CHECK(FindInvalidUtf8("ab\xff" "cd") == std::optional<std::size_t>(2));
  CHECK(FindInvalidUtf8("x\xc3") == std::optional<std::size_t>(1));
  // Overlong encoding of '/'.
  CHECK(FindInvalidUtf8("\xc0\xaf") == std::optional<std::size_t>(0));
  // UTF-16 surrogate.
  CHECK(FindInvalidUtf8("\xed\xa0\x80") == std::optional<std::size_t>(0));
}

TEST_CASE("stopword files skip comments and blanks") {
  const StopwordSet s = ParseStopwords("# comment\nthe\n\nAnd\n");
  CHECK(s.size() == 2);
  CHECK(s.count("the") == 1);
  CHECK(s.count("and") == 1);
}

TEST_CASE("preprocess sentence") {
  const TextNormalizer norm(StopwordSet{"may"});
  const Sentence s =
      PreprocessSentence("Slower-acting drugs may cause discontinuation symptoms", norm);
  CHECK(s.tokens == std::vector<std::string>{"slower", "acting", "drugs", "may", "cause",
                                             "discontinuation", "symptoms"});
  CHECK(s.stems == std::vector<std::string>{"slower", "act", "drug", "caus", "discontinu",
                                            "symptom"});

  CHECK(PreprocessSentence("", norm).tokens.empty());
  CHECK(PreprocessSentence("", norm).stems.empty());

  const TextNormalizer the(StopwordSet{"the"});
  const Sentence all_stop = PreprocessSentence("The the THE", the);
  CHECK(all_stop.tokens.size() == 3);
  CHECK(all_stop.stems.empty());
}

TEST_CASE("stems never contain stopwords") {
  // "was" is a stopword; "wa" would be its stem if it were kept.
  const TextNormalizer norm(StopwordSet{"was", "as"});
  const Sentence s = PreprocessSentence("It was as bad as ever, alas.", norm);
  for (const auto& st : s.stems) CHECK(norm.stopwords().count(st) == 0);
}

TEST_CASE("rule segmenter") {
  const RuleSegmenter seg;
  CHECK(seg.Split("It rained. Therefore, the match was cancelled.") ==
        std::vector<std::string>{"It rained.", "Therefore, the match was cancelled."});
  CHECK(seg.Split("Dr. Smith arrived. He left!") ==
        std::vector<std::string>{"Dr. Smith arrived.", "He left!"});
  CHECK(seg.Split("See e.g. the appendix. Done?") ==
        std::vector<std::string>{"See e.g. the appendix.", "Done?"});
  CHECK(seg.Split("J. K. Rowling wrote it. Yes.") ==
        std::vector<std::string>{"J. K. Rowling wrote it.", "Yes."});
  CHECK(seg.Split("He said \"stop.\" Then he went.") ==
        std::vector<std::string>{"He said \"stop.\"", "Then he went."});
  CHECK(seg.Split("a heading\n\nno final stop") ==
        std::vector<std::string>{"a heading", "no final stop"});
  CHECK(seg.Split("  spaced\n  out  text. ") == std::vector<std::string>{"spaced out text."});
  CHECK(seg.Split("").empty());
  CHECK(seg.Split("3.5 percent grew.") == std::vector<std::string>{"3.5 percent grew."});
}

}  // namespace
}  // namespace causenet
