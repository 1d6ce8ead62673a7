#include "causenet/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "causenet/text.h"
#include "causenet/util.h"

namespace causenet {

EmbeddingStore::EmbeddingStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DomainError("embedding dimension must be positive");
}

void EmbeddingStore::Insert(std::string token, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw DomainError(fmt::format("vector for '{}' has length {}, expected {}", token,
                                  vector.size(), dimension_));
  }
  vectors_[std::move(token)] = std::move(vector);
}

std::optional<std::span<const double>> EmbeddingStore::Lookup(
    std::string_view token) const {
  auto it = vectors_.find(std::string(token));
  if (it == vectors_.end()) return std::nullopt;
  return std::span<const double>(it->second);
}

std::optional<std::vector<double>> EmbeddingStore::ResolvePhrase(
    std::string_view phrase) const {
  std::vector<double> sum(dimension_, 0.0);
  std::size_t hits = 0;
  for (const auto& tok : WordTokens(phrase)) {
    auto v = Lookup(tok);
    if (!v) continue;
    for (std::size_t d = 0; d < dimension_; ++d) sum[d] += (*v)[d];
    ++hits;
  }
  if (hits == 0) return std::nullopt;
  for (double& x : sum) x /= static_cast<double>(hits);
  return sum;
}

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

EmbeddingStore ParseEmbeddings(std::string_view contents, const std::string& source) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    while (pos < contents.size()) {
      std::size_t eol = contents.find('\n', pos);
      if (eol == std::string_view::npos) eol = contents.size();
      line = contents.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (!SplitFields(line).empty()) return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line)) throw FormatError(source, 0, "empty embedding file");
  auto header = SplitFields(line);
  std::size_t vocab = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !ParseNumber(header[0], vocab) ||
      !ParseNumber(header[1], dim) || dim == 0) {
    throw FormatError(source, line_no,
                      "header must be '<vocab_size> <dimension>' with dimension > 0");
  }

  EmbeddingStore store(dim);
  std::size_t rows = 0;
  while (next_line(line)) {
    auto fields = SplitFields(line);
    if (fields.size() != dim + 1) {
      throw FormatError(source, line_no,
                        fmt::format("expected token and {} values, found {} values", dim,
                                    fields.size() - 1));
    }
    std::vector<double> vec(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      if (!ParseNumber(fields[d + 1], vec[d]) || !std::isfinite(vec[d])) {
        throw FormatError(source, line_no,
                          fmt::format("bad float '{}'", fields[d + 1]));
      }
    }
    std::string token(fields[0]);
    if (store.Lookup(token)) {
      Warn(fmt::format("{}:{}: duplicate embedding for '{}', keeping the last row",
                       source, line_no, token));
    }
    store.Insert(std::move(token), std::move(vec));
    ++rows;
  }
  if (rows != vocab) {
    throw FormatError(source, line_no,
                      fmt::format("header declares {} rows, found {}", vocab, rows));
  }
  return store;
}

EmbeddingStore LoadEmbeddings(const std::filesystem::path& path) {
  return ParseEmbeddings(ReadFile(path), path.string());
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("cosine of vectors of different length");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  // A zero vector has no direction; treat it as unrelated to everything.
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double Similarity(std::string_view a, std::string_view b, const EmbeddingStore& store) {
  auto va = store.ResolvePhrase(a);
  if (!va) throw OovError(std::string(a));
  auto vb = store.ResolvePhrase(b);
  if (!vb) throw OovError(std::string(b));
  return Cosine(*va, *vb);
}

}  // namespace causenet
