#ifndef CAUSENET_WEIGHTING_H_
#define CAUSENET_WEIGHTING_H_

#include <string>
#include <string_view>

#include "causenet/embeddings.h"

namespace causenet {

// How much a value counts towards its variable in the causal score.
//   kCosine:          max(0, cos(value, variable))
//   kOneMinusCosine:  clamp(1 - cos(value, variable), 0, 1)
enum class WeightMode { kCosine, kOneMinusCosine };

std::string ToString(WeightMode mode);
// Accepts "cosine" and "one-minus-cosine"; throws DomainError otherwise.
WeightMode ParseWeightMode(std::string_view text);

// Weight in [0, 1]. Throws OovError if either phrase has no vector.
double ValueWeight(std::string_view value, std::string_view variable,
                   const EmbeddingStore& embeddings, WeightMode mode = WeightMode::kCosine);

}  // namespace causenet

#endif  // CAUSENET_WEIGHTING_H_
