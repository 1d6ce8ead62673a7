#ifndef CAUSENET_LATTICE_H_
#define CAUSENET_LATTICE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "causenet/hypernymy.h"

namespace causenet {

using Bitset = boost::dynamic_bitset<>;

// Objects are variables, attributes are values, incidence says which values
// belong to which variable. Both sorts are kept in sorted order.
class FormalContext {
 public:
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                const std::vector<std::pair<std::string, std::string>>& incidence);

  static FormalContext FromVariableStore(const VariableStore& store);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }

  // Throw DomainError for names not in the context.
  std::size_t ObjectIndex(std::string_view name) const;
  std::size_t AttributeIndex(std::string_view name) const;

  bool Has(std::size_t object, std::size_t attribute) const { return rows_[object][attribute]; }
  const Bitset& Row(std::size_t object) const { return rows_[object]; }
  const Bitset& Column(std::size_t attribute) const { return columns_[attribute]; }

  // Derivation operators. The empty set derives to the whole other sort.
  Bitset CommonAttributes(const Bitset& objects) const;
  Bitset CommonObjects(const Bitset& attributes) const;

  // Name-based forms of the same.
  std::vector<std::string> DeriveFromObjects(const std::vector<std::string>& objects) const;
  std::vector<std::string> DeriveFromAttributes(const std::vector<std::string>& attributes) const;

  Bitset ObjectSet(const std::vector<std::string>& names) const;
  Bitset AttributeSet(const std::vector<std::string>& names) const;
  std::vector<std::string> ObjectNames(const Bitset& set) const;
  std::vector<std::string> AttributeNames(const Bitset& set) const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::map<std::string, std::size_t, std::less<>> object_index_;
  std::map<std::string, std::size_t, std::less<>> attribute_index_;
  std::vector<Bitset> rows_;
  std::vector<Bitset> columns_;
};

struct FormalConcept {
  Bitset extent;
  Bitset intent;

  bool operator==(const FormalConcept&) const = default;
};

// Orders by extent, read as an ascending list of object indices.
bool ExtentLess(const Bitset& a, const Bitset& b);

// All formal concepts, by Close-by-One, sorted with ExtentLess.
std::vector<FormalConcept> EnumerateConcepts(const FormalContext& context);

// Concepts ordered by extent inclusion; only cover edges are stored.
class ConceptLattice {
 public:
  ConceptLattice(std::vector<std::string> objects, std::vector<std::string> attributes,
                 std::vector<FormalConcept> concepts,
                 std::vector<std::pair<std::size_t, std::size_t>> covers);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<FormalConcept>& concepts() const { return concepts_; }
  // (child, parent) pairs with child < parent and nothing in between.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }

  const std::vector<std::size_t>& Children(std::size_t concept_id) const {
    return children_[concept_id];
  }
  const std::vector<std::size_t>& Parents(std::size_t concept_id) const {
    return parents_[concept_id];
  }

  std::optional<std::size_t> Top() const;
  std::optional<std::size_t> Bottom() const;

  // The smallest concept whose extent contains the object. Throws DomainError
  // for unknown objects.
  std::size_t ObjectConcept(std::string_view object) const;

  // Concepts strictly below `concept_id`, via cover edges.
  std::vector<std::size_t> Descendants(std::size_t concept_id) const;

  // {objects, attributes, concepts: [{id, extent, intent}], covers: [[child, parent]]}
  std::string ToJson() const;
  static ConceptLattice FromJson(std::string_view contents,
                                 const std::string& source = "lattice.json");
  std::string ToDot() const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<FormalConcept> concepts_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
  std::map<std::string, std::size_t, std::less<>> object_index_;
};

// Hasse diagram of the given concepts. Throws DomainError on duplicates.
ConceptLattice BuildLattice(const FormalContext& context, std::vector<FormalConcept> concepts);

struct DirectedPair {
  std::string cause;
  std::string effect;

  auto operator<=>(const DirectedPair&) const = default;
};

enum class LinkProvenance { kDirect, kInherited };

struct CausalLink {
  std::string cause;
  std::string effect;
  LinkProvenance provenance = LinkProvenance::kDirect;
  std::optional<DirectedPair> source;  // set for inherited links

  bool operator==(const CausalLink&) const = default;
};

struct InheritanceOptions {
  // Also pass a relation down to the subconcepts of the effect.
  bool propagate_effect_side = false;
};

// The direct pairs plus (D, effect) for every other variable D whose object
// concept lies at or below the cause's object concept. A pair already present as
// a direct pair keeps its direct provenance; an inherited pair reachable from
// several sources records the smallest one. Sorted by (cause, effect).
std::vector<CausalLink> InheritCausalRelations(const ConceptLattice& lattice,
                                               const std::vector<DirectedPair>& direct,
                                               const InheritanceOptions& options = {});

}  // namespace causenet

#endif  // CAUSENET_LATTICE_H_
