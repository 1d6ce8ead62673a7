#include <doctest.h>

#include <string>

#include "causenet/corpus.h"
#include "causenet/util.h"
#include "test_support.h"

namespace causenet {
namespace {

using testing::TempDir;

IngestConfig TestConfig(int workers = 1) {
  IngestConfig c;
  c.stopwords = {"the", "a", "is", "was"};
  c.workers = workers;
  return c;
}

TEST_CASE("two files of three sentences") {
  TempDir dir;
  WriteFile(dir / "a.txt", "One fact. Two facts. Three facts.");
  WriteFile(dir / "b.txt", "Red sky! Blue sea? Green land.");
  const CorpusStore c = IngestCorpus({dir / "a.txt", dir / "b.txt"}, TestConfig());
  CHECK(c.sentence_count() == 6);
  REQUIRE(c.documents().size() == 2);
  CHECK(c.documents()[0].id == (dir / "a.txt").string());
  CHECK(c.documents()[1].sentences[2].raw == "Green land.");
  CHECK(c.documents()[1].sentences[2].id.index == 2);
}

TEST_CASE("empty file gives an empty document") {
  TempDir dir;
  WriteFile(dir / "empty.txt", "");
  const CorpusStore c = IngestCorpus({dir / "empty.txt"}, TestConfig());
  REQUIRE(c.documents().size() == 1);
  CHECK(c.documents()[0].sentences.empty());
  CHECK(c.sentence_count() == 0);
}

TEST_CASE("jsonl input uses the given ids") {
  TempDir dir;
  WriteFile(dir / "docs.jsonl",
            "{\"id\": \"d1\", \"text\": \"Stress causes insomnia.\"}\n"
            "\n"
            "{\"id\": \"d2\", \"text\": \"It rained. It poured.\"}\n");
  const CorpusStore c = IngestCorpus({dir / "docs.jsonl"}, TestConfig());
  REQUIRE(c.documents().size() == 2);
  CHECK(c.documents()[0].id == "d1");
  CHECK(c.documents()[1].sentences.size() == 2);
}

TEST_CASE("ingest errors") {
  TempDir dir;
  SUBCASE("missing file names the path") {
    const auto missing = dir / "nope.txt";
    try {
      IngestCorpus({missing}, TestConfig());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
    }
  }
  SUBCASE("bad utf-8 names the byte offset") {
    WriteFile(dir / "bad.txt", std::string("Fine text \xff here."));
    try {
      IngestCorpus({dir / "bad.txt"}, TestConfig());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("byte offset 10") != std::string::npos);
    }
  }
  SUBCASE("duplicate document ids") {
    WriteFile(dir / "x.jsonl", "{\"id\": \"d\", \"text\": \"a.\"}\n{\"id\": \"d\", \"text\": \"b.\"}\n");
    CHECK_THROWS_AS(IngestCorpus({dir / "x.jsonl"}, TestConfig()), DomainError);
  }
}

TEST_CASE("serialized store does not depend on worker count") {
  std::vector<std::pair<std::string, std::string>> docs;
  for (int i = 0; i < 40; ++i) {
    std::string text;
    for (int j = 0; j <= i % 7; ++j) {
      text += "Document " + std::to_string(i) + " sentence " + std::to_string(j) +
              " mentions stress and sleep. ";
    }
    docs.emplace_back("doc" + std::to_string(i), text);
  }
  const std::string one = IngestTexts(docs, TestConfig(1)).ToJsonl();
  const std::string eight = IngestTexts(docs, TestConfig(8)).ToJsonl();
  CHECK(one == eight);
}

TEST_CASE("jsonl round trip") {
  const CorpusStore c =
      IngestTexts({{"d1", "Stress causes insomnia. The sky is blue."}, {"d2", ""}}, TestConfig());
  const CorpusStore back = CorpusStore::FromJsonl(c.ToJsonl());
  CHECK(back == c);
  CHECK(back.ToJsonl() == c.ToJsonl());
}

TEST_CASE("sentence invariants") {
  const CorpusStore c = IngestTexts(
      {{"d", "The cat was on a mat. A dog is here. Birds sing loudly."}}, TestConfig());
  std::size_t total = 0;
  for (const auto& doc : c.documents()) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      const auto& s = doc.sentences[i];
      CHECK(s.id.doc_id == doc.id);
      CHECK(s.id.index == i);
      for (const auto& st : s.stems) CHECK(TestConfig().stopwords.count(st) == 0);
      CHECK(s.stems.size() <= s.tokens.size());
      ++total;
    }
  }
  CHECK(total == c.sentence_count());
}

}  // namespace
}  // namespace causenet
