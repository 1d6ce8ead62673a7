#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "causenet/embeddings.h"
#include "causenet/util.h"

namespace causenet {
namespace {

TEST_CASE("load a small store") {
  const EmbeddingStore s = ParseEmbeddings("2 3\na 1 0 0\nb 0 1 0\n", "t");
  CHECK(s.size() == 2);
  CHECK(s.dimension() == 3);
  REQUIRE(s.Lookup("a").has_value());
  CHECK((*s.Lookup("a"))[0] == 1.0);
  CHECK_FALSE(s.Lookup("zzz").has_value());
}

TEST_CASE("short row is an error at its line") {
  try {
    ParseEmbeddings("2 3\na 1 0 0\nb 0 1\n", "emb.txt");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("header problems") {
  CHECK_THROWS_AS(ParseEmbeddings("", "t"), FormatError);
  CHECK_THROWS_AS(ParseEmbeddings("2\n", "t"), FormatError);
  CHECK_THROWS_AS(ParseEmbeddings("3 2\na 1 0\nb 0 1\n", "t"), FormatError);
  CHECK_THROWS_AS(ParseEmbeddings("1 2\na 1 x\n", "t"), FormatError);
}

TEST_CASE("duplicate rows keep the last and warn") {
  WarningCapture warnings;
  const EmbeddingStore s = ParseEmbeddings("2 2\na 1 0\na 0 1\n", "t");
  CHECK(s.size() == 1);
  CHECK((*s.Lookup("a"))[1] == 1.0);
  CHECK(warnings.Contains("duplicate"));
}

TEST_CASE("similarity examples") {
  EmbeddingStore s(2);
  s.Insert("x", {1, 0});
  s.Insert("y", {0, 1});
  s.Insert("d", {1, 1});
  CHECK(Similarity("x", "x", s) == doctest::Approx(1.0));
  CHECK(Similarity("x", "y", s) == 0.0);
  CHECK(Similarity("d", "x", s) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  // Phrases resolve to the mean of their known words; unknown words are ignored.
  CHECK(Similarity("x y", "d", s) == doctest::Approx(1.0));
  CHECK(Similarity("x unknownword", "x", s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Similarity("nothing known", "x", s), OovError);
}

TEST_CASE("zero vector has similarity 0") {
  EmbeddingStore s(2);
  s.Insert("z", {0, 0});
  s.Insert("x", {1, 0});
  CHECK(Similarity("z", "x", s) == 0.0);
}

TEST_CASE("similarity is symmetric and bounded") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 3.0);
  EmbeddingStore s(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(5);
    for (auto& x : v) x = g(rng);
    s.Insert("w" + std::to_string(i), v);
  }
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      const std::string a = "w" + std::to_string(i);
      const std::string b = "w" + std::to_string(j);
      const double ab = Similarity(a, b, s);
      CHECK(ab == Similarity(b, a, s));
      CHECK(std::fabs(ab) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("insert checks the dimension") {
  EmbeddingStore s(3);
  CHECK_THROWS_AS(s.Insert("a", {1.0, 2.0}), DomainError);
}

}  // namespace
}  // namespace causenet
