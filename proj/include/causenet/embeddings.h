#ifndef CAUSENET_EMBEDDINGS_H_
#define CAUSENET_EMBEDDINGS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace causenet {

// Dense word vectors of a single dimension. Immutable once built.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension);

  // Later insertions of the same token replace earlier ones.
  // Throws DomainError if the vector length differs from dimension().
  void Insert(std::string token, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

  // Misses are reported as nullopt, never as a zero vector.
  std::optional<std::span<const double>> Lookup(std::string_view token) const;

  // Mean of the vectors of the phrase's in-vocabulary word tokens; nullopt
  // when none of them is known.
  std::optional<std::vector<double>> ResolvePhrase(std::string_view phrase) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Text format: "<vocab_size> <dimension>" header, then one token per line
// followed by <dimension> floats. Duplicate tokens keep the last row and emit
// a warning.
EmbeddingStore LoadEmbeddings(const std::filesystem::path& path);
EmbeddingStore ParseEmbeddings(std::string_view contents, const std::string& source);

double Cosine(std::span<const double> a, std::span<const double> b);

// Cosine of the resolved phrase vectors, in [-1, 1]. Throws OovError when a
// phrase has no in-vocabulary constituent.
double Similarity(std::string_view a, std::string_view b, const EmbeddingStore& store);

}  // namespace causenet

#endif  // CAUSENET_EMBEDDINGS_H_
