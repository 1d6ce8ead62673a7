#include "causenet/corpus.h"

#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "causenet/util.h"

namespace causenet {

using json = nlohmann::json;

std::string SentenceId::ToString() const {
  return fmt::format("{}#{}", doc_id, index);
}

Sentence PreprocessSentence(std::string_view raw, const TextNormalizer& normalizer,
                            SentenceId id) {
  Sentence s;
  s.id = std::move(id);
  s.raw = std::string(raw);
  s.tokens = WordTokens(raw);
  s.stems = normalizer.StemTokens(s.tokens);
  return s;
}

CorpusStore::CorpusStore(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  std::set<std::string> seen;
  for (const auto& doc : documents_) {
    if (!seen.insert(doc.id).second) {
      throw DomainError(fmt::format("duplicate document id '{}'", doc.id));
    }
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      const SentenceId& sid = doc.sentences[i].id;
      if (sid.doc_id != doc.id || sid.index != i) {
        throw DomainError(fmt::format("sentence id {} out of place in document '{}'",
                                      sid.ToString(), doc.id));
      }
    }
    sentence_count_ += doc.sentences.size();
  }
}

std::string CorpusStore::ToJsonl() const {
  std::string out;
  for (const auto& doc : documents_) {
    json sentences = json::array();
    for (const auto& s : doc.sentences) {
      sentences.push_back({{"raw", s.raw}, {"tokens", s.tokens}, {"stems", s.stems}});
    }
    out += json{{"id", doc.id}, {"sentences", sentences}}.dump();
    out += '\n';
  }
  return out;
}

CorpusStore CorpusStore::FromJsonl(std::string_view contents, const std::string& source) {
  std::vector<Document> docs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      Document doc;
      doc.id = j.at("id").get<std::string>();
      std::size_t index = 0;
      for (const auto& js : j.at("sentences")) {
        Sentence s;
        s.id = {doc.id, index++};
        s.raw = js.at("raw").get<std::string>();
        s.tokens = js.at("tokens").get<std::vector<std::string>>();
        s.stems = js.at("stems").get<std::vector<std::string>>();
        doc.sentences.push_back(std::move(s));
      }
      docs.push_back(std::move(doc));
    } catch (const json::exception& e) {
      throw FormatError(source, line_no, e.what());
    }
  }
  return CorpusStore(std::move(docs));
}

namespace {

struct RawDocument {
  std::string id;
  std::string text;
};

Document BuildDocument(const RawDocument& raw, const TextNormalizer& normalizer,
                       const SentenceSegmenter& segmenter) {
  Document doc;
  doc.id = raw.id;
  std::size_t index = 0;
  for (const auto& sentence : segmenter.Split(raw.text)) {
    doc.sentences.push_back(PreprocessSentence(sentence, normalizer, {doc.id, index++}));
  }
  return doc;
}

void CheckUtf8(std::string_view bytes, const std::string& where) {
  if (auto bad = FindInvalidUtf8(bytes)) {
    throw FormatError(where, 0, fmt::format("invalid UTF-8 at byte offset {}", *bad));
  }
}

std::vector<RawDocument> ReadSource(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = ReadFile(path);
  } catch (const Error& e) {
    throw Error(fmt::format("{}: unreadable corpus file ({})", path.string(), e.what()));
  }
  CheckUtf8(bytes, path.string());
  if (path.extension() != ".jsonl") return {{path.string(), std::move(bytes)}};

  std::vector<RawDocument> docs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t eol = bytes.find('\n', pos);
    if (eol == std::string::npos) eol = bytes.size();
    std::string_view line(bytes.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      json j = json::parse(line);
      const json& id = j.at("id");
      docs.push_back({id.is_string() ? id.get<std::string>() : id.dump(),
                      j.at("text").get<std::string>()});
    } catch (const json::exception& e) {
      throw FormatError(path.string(), line_no, e.what());
    }
  }
  return docs;
}

CorpusStore Build(const std::vector<RawDocument>& raw, const IngestConfig& config) {
  if (!config.segmenter) throw DomainError("ingest config has no sentence segmenter");
  const TextNormalizer normalizer(config.stopwords);
  auto docs = ParallelMap(raw.size(), config.workers, [&](std::size_t i) {
    return BuildDocument(raw[i], normalizer, *config.segmenter);
  });
  return CorpusStore(std::move(docs));
}

}  // namespace

CorpusStore IngestCorpus(const std::vector<std::filesystem::path>& paths,
                         const IngestConfig& config) {
  auto per_file = ParallelMap(paths.size(), config.workers,
                              [&](std::size_t i) { return ReadSource(paths[i]); });
  std::vector<RawDocument> raw;
  for (auto& docs : per_file) {
    for (auto& d : docs) raw.push_back(std::move(d));
  }
  return Build(raw, config);
}

CorpusStore IngestTexts(const std::vector<std::pair<std::string, std::string>>& docs,
                        const IngestConfig& config) {
  std::vector<RawDocument> raw;
  raw.reserve(docs.size());
  for (const auto& [id, text] : docs) {
    CheckUtf8(text, id);
    raw.push_back({id, text});
  }
  return Build(raw, config);
}

}  // namespace causenet
