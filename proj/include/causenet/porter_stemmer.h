#ifndef CAUSENET_PORTER_STEMMER_H_
#define CAUSENET_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace causenet {

// Porter (1980) suffix stripper, original rule set.
//
// Input is expected to be a lowercase word. Words of one or two letters, and
// words containing anything other than a-z, are returned unchanged.
//
// Note that the algorithm is not idempotent on every input: "agreed" stems
// to "agre", which itself stems to "agr".
std::string PorterStem(std::string_view word);

}  // namespace causenet

#endif  // CAUSENET_PORTER_STEMMER_H_
