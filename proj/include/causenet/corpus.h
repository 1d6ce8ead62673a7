#ifndef CAUSENET_CORPUS_H_
#define CAUSENET_CORPUS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causenet/text.h"

namespace causenet {

struct SentenceId {
  std::string doc_id;
  std::size_t index = 0;

  auto operator<=>(const SentenceId&) const = default;
  std::string ToString() const;
};

struct Sentence {
  SentenceId id;
  std::string raw;
  std::vector<std::string> tokens;  // lowercased word tokens
  std::vector<std::string> stems;   // Porter stems of the non-stopword tokens

  bool operator==(const Sentence&) const = default;
};

// Tokenizes `raw` and stems the tokens that are not stopwords.
Sentence PreprocessSentence(std::string_view raw, const TextNormalizer& normalizer,
                            SentenceId id = {});

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

// Immutable collection of preprocessed documents in input order.
class CorpusStore {
 public:
  CorpusStore() = default;
  // Throws DomainError on duplicate document ids or sentence ids that do not
  // match their document and position.
  explicit CorpusStore(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  std::size_t sentence_count() const { return sentence_count_; }

  // One JSON object per document per line.
  std::string ToJsonl() const;
  static CorpusStore FromJsonl(std::string_view contents,
                               const std::string& source = "corpus.jsonl");

  bool operator==(const CorpusStore&) const = default;

 private:
  std::vector<Document> documents_;
  std::size_t sentence_count_ = 0;
};

struct IngestConfig {
  StopwordSet stopwords;
  std::shared_ptr<const SentenceSegmenter> segmenter =
      std::make_shared<RuleSegmenter>();
  int workers = 1;
};

// Reads UTF-8 text files (one document each, id = the path as given) and
// JSONL files (extension .jsonl, one {id, text} object per line). Documents
// are processed in parallel and kept in input order.
CorpusStore IngestCorpus(const std::vector<std::filesystem::path>& paths,
                         const IngestConfig& config);

// In-memory variant: (doc_id, text) pairs.
CorpusStore IngestTexts(const std::vector<std::pair<std::string, std::string>>& docs,
                        const IngestConfig& config);

}  // namespace causenet

#endif  // CAUSENET_CORPUS_H_
