#include "causenet/lattice.h"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "causenet/util.h"

namespace causenet {

using json = nlohmann::json;

namespace {

std::vector<std::string> SortedUnique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FormalContext::FormalContext(std::vector<std::string> objects,
                             std::vector<std::string> attributes,
                             const std::vector<std::pair<std::string, std::string>>& incidence)
    : objects_(SortedUnique(std::move(objects))),
      attributes_(SortedUnique(std::move(attributes))) {
  for (std::size_t i = 0; i < objects_.size(); ++i) object_index_[objects_[i]] = i;
  for (std::size_t j = 0; j < attributes_.size(); ++j) attribute_index_[attributes_[j]] = j;
  rows_.assign(objects_.size(), Bitset(attributes_.size()));
  columns_.assign(attributes_.size(), Bitset(objects_.size()));
  for (const auto& [obj, attr] : incidence) {
    const std::size_t g = ObjectIndex(obj);
    const std::size_t m = AttributeIndex(attr);
    rows_[g].set(m);
    columns_[m].set(g);
  }
}

FormalContext FormalContext::FromVariableStore(const VariableStore& store) {
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
  std::vector<std::pair<std::string, std::string>> incidence;
  for (const auto& [name, var] : store.variables()) {
    objects.push_back(name);
    for (const auto& v : var.values) {
      attributes.push_back(v.phrase);
      incidence.emplace_back(name, v.phrase);
    }
  }
  return FormalContext(std::move(objects), std::move(attributes), incidence);
}

std::size_t FormalContext::ObjectIndex(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) {
    throw DomainError(fmt::format("'{}' is not an object of the context", name));
  }
  return it->second;
}

std::size_t FormalContext::AttributeIndex(std::string_view name) const {
  auto it = attribute_index_.find(name);
  if (it == attribute_index_.end()) {
    throw DomainError(fmt::format("'{}' is not an attribute of the context", name));
  }
  return it->second;
}

Bitset FormalContext::CommonAttributes(const Bitset& objects) const {
  Bitset out(attributes_.size());
  out.set();
  for (auto g = objects.find_first(); g != Bitset::npos; g = objects.find_next(g)) {
    out &= rows_[g];
  }
  return out;
}

Bitset FormalContext::CommonObjects(const Bitset& attributes) const {
  Bitset out(objects_.size());
  out.set();
  for (auto m = attributes.find_first(); m != Bitset::npos; m = attributes.find_next(m)) {
    out &= columns_[m];
  }
  return out;
}

Bitset FormalContext::ObjectSet(const std::vector<std::string>& names) const {
  Bitset out(objects_.size());
  for (const auto& n : names) out.set(ObjectIndex(n));
  return out;
}

Bitset FormalContext::AttributeSet(const std::vector<std::string>& names) const {
  Bitset out(attributes_.size());
  for (const auto& n : names) out.set(AttributeIndex(n));
  return out;
}

std::vector<std::string> FormalContext::ObjectNames(const Bitset& set) const {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) {
    out.push_back(objects_[i]);
  }
  return out;
}

std::vector<std::string> FormalContext::AttributeNames(const Bitset& set) const {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) {
    out.push_back(attributes_[i]);
  }
  return out;
}

std::vector<std::string> FormalContext::DeriveFromObjects(
    const std::vector<std::string>& objects) const {
  return AttributeNames(CommonAttributes(ObjectSet(objects)));
}

std::vector<std::string> FormalContext::DeriveFromAttributes(
    const std::vector<std::string>& attributes) const {
  return ObjectNames(CommonObjects(AttributeSet(attributes)));
}

bool ExtentLess(const Bitset& a, const Bitset& b) {
  auto i = a.find_first();
  auto j = b.find_first();
  while (i != Bitset::npos && j != Bitset::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return i == Bitset::npos && j != Bitset::npos;
}

namespace {

// One Close-by-One step: emit (extent, intent), then try adding each
// attribute from `start` on and keep only closures whose new attributes all
// lie at or after the one added (the canonicity test).
void CloseByOne(const FormalContext& ctx, const Bitset& extent, const Bitset& intent,
                std::size_t start, std::vector<FormalConcept>& out) {
  out.push_back({extent, intent});
  const std::size_t m = ctx.attribute_count();
  for (std::size_t j = start; j < m; ++j) {
    if (intent[j]) continue;
    Bitset next_extent = extent & ctx.Column(j);
    Bitset next_intent = ctx.CommonAttributes(next_extent);
    Bitset added = next_intent - intent;
    if (added.find_first() < j) continue;
    CloseByOne(ctx, next_extent, next_intent, j + 1, out);
  }
}

}  // namespace

std::vector<FormalConcept> EnumerateConcepts(const FormalContext& context) {
  Bitset all_objects(context.object_count());
  all_objects.set();
  std::vector<FormalConcept> out;
  CloseByOne(context, all_objects, context.CommonAttributes(all_objects), 0, out);
  std::sort(out.begin(), out.end(), [](const FormalConcept& a, const FormalConcept& b) {
    return ExtentLess(a.extent, b.extent);
  });
  return out;
}

ConceptLattice::ConceptLattice(std::vector<std::string> objects,
                               std::vector<std::string> attributes,
                               std::vector<FormalConcept> concepts,
                               std::vector<std::pair<std::size_t, std::size_t>> covers)
    : objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      concepts_(std::move(concepts)),
      covers_(std::move(covers)) {
  children_.resize(concepts_.size());
  parents_.resize(concepts_.size());
  for (const auto& [child, parent] : covers_) {
    if (child >= concepts_.size() || parent >= concepts_.size()) {
      throw DomainError("cover edge references a missing concept");
    }
    children_[parent].push_back(child);
    parents_[child].push_back(parent);
  }
  for (auto& c : children_) std::sort(c.begin(), c.end());
  for (auto& p : parents_) std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < objects_.size(); ++i) object_index_[objects_[i]] = i;
}

std::optional<std::size_t> ConceptLattice::Top() const {
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (parents_[i].empty()) {
      // Unique maximal element, if the concepts form a lattice.
      std::size_t maximal = 0;
      for (const auto& p : parents_) maximal += p.empty() ? 1 : 0;
      if (maximal == 1) return i;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> ConceptLattice::Bottom() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (children_[i].empty()) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

std::size_t ConceptLattice::ObjectConcept(std::string_view object) const {
  auto it = object_index_.find(object);
  if (it == object_index_.end()) {
    throw DomainError(fmt::format("unknown concept '{}'", object));
  }
  const std::size_t g = it->second;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (!concepts_[i].extent[g]) continue;
    if (!best || concepts_[i].extent.count() < concepts_[*best].extent.count()) best = i;
  }
  if (!best) throw DomainError(fmt::format("no concept contains '{}'", object));
  return *best;
}

std::vector<std::size_t> ConceptLattice::Descendants(std::size_t concept_id) const {
  std::vector<bool> seen(concepts_.size(), false);
  std::deque<std::size_t> queue(children_[concept_id].begin(), children_[concept_id].end());
  std::vector<std::size_t> out;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    if (seen[c]) continue;
    seen[c] = true;
    out.push_back(c);
    for (std::size_t d : children_[c]) queue.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::string> Names(const std::vector<std::string>& all, const Bitset& set) {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i)) out.push_back(all[i]);
  return out;
}

std::string DotEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string ConceptLattice::ToJson() const {
  json concepts = json::array();
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    concepts.push_back({{"id", i},
                        {"extent", Names(objects_, concepts_[i].extent)},
                        {"intent", Names(attributes_, concepts_[i].intent)}});
  }
  json covers = json::array();
  for (const auto& [child, parent] : covers_) covers.push_back({child, parent});
  json j = {{"objects", objects_},
            {"attributes", attributes_},
            {"concepts", concepts},
            {"covers", covers}};
  return j.dump(1) + "\n";
}

ConceptLattice ConceptLattice::FromJson(std::string_view contents, const std::string& source) {
  try {
    json j = json::parse(contents);
    auto objects = j.at("objects").get<std::vector<std::string>>();
    auto attributes = j.at("attributes").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> oi;
    std::map<std::string, std::size_t> ai;
    for (std::size_t i = 0; i < objects.size(); ++i) oi[objects[i]] = i;
    for (std::size_t i = 0; i < attributes.size(); ++i) ai[attributes[i]] = i;
    std::vector<FormalConcept> concepts;
    for (const auto& jc : j.at("concepts")) {
      if (jc.at("id").get<std::size_t>() != concepts.size()) {
        throw FormatError(source, 0, "concept ids must be 0..n-1 in order");
      }
      FormalConcept c{Bitset(objects.size()), Bitset(attributes.size())};
      for (const auto& name : jc.at("extent")) c.extent.set(oi.at(name.get<std::string>()));
      for (const auto& name : jc.at("intent")) c.intent.set(ai.at(name.get<std::string>()));
      concepts.push_back(std::move(c));
    }
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (const auto& e : j.at("covers")) {
      covers.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    return ConceptLattice(std::move(objects), std::move(attributes), std::move(concepts),
                          std::move(covers));
  } catch (const json::exception& e) {
    throw FormatError(source, 0, e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(source, 0, fmt::format("unknown name in concept: {}", e.what()));
  }
}

std::string ConceptLattice::ToDot() const {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    std::string extent;
    for (const auto& n : Names(objects_, concepts_[i].extent)) {
      extent += (extent.empty() ? "" : ", ") + n;
    }
    out += fmt::format("  c{} [label=\"{}: {{{}}}\"];\n", i, i, DotEscape(extent));
  }
  for (const auto& [child, parent] : covers_) {
    out += fmt::format("  c{} -> c{};\n", child, parent);
  }
  out += "}\n";
  return out;
}

ConceptLattice BuildLattice(const FormalContext& context, std::vector<FormalConcept> concepts) {
  std::set<std::vector<std::size_t>> seen;
  for (const auto& c : concepts) {
    std::vector<std::size_t> key;
    for (auto i = c.extent.find_first(); i != Bitset::npos; i = c.extent.find_next(i)) {
      key.push_back(i);
    }
    if (!seen.insert(key).second) {
      throw DomainError(fmt::format("duplicate concept with extent {{{}}}",
                                    fmt::join(Names(context.objects(), c.extent), ", ")));
    }
  }

  // For each concept, walk the strictly larger extents in ascending size; a
  // candidate is a cover unless some already accepted cover lies below it.
  const std::size_t n = concepts.size();
  std::vector<std::size_t> by_size(n);
  for (std::size_t i = 0; i < n; ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return concepts[a].extent.count() < concepts[b].extent.count();
  });
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t c = 0; c < n; ++c) {
    const Bitset& ext = concepts[c].extent;
    std::vector<std::size_t> uppers;
    for (std::size_t d : by_size) {
      const Bitset& other = concepts[d].extent;
      if (d == c || other.count() <= ext.count() || !ext.is_subset_of(other)) continue;
      bool blocked = false;
      for (std::size_t u : uppers) {
        if (concepts[u].extent.is_subset_of(other)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) uppers.push_back(d);
    }
    std::sort(uppers.begin(), uppers.end());
    for (std::size_t u : uppers) covers.emplace_back(c, u);
  }
  return ConceptLattice(context.objects(), context.attributes(), std::move(concepts),
                        std::move(covers));
}

std::vector<CausalLink> InheritCausalRelations(const ConceptLattice& lattice,
                                               const std::vector<DirectedPair>& direct,
                                               const InheritanceOptions& options) {
  // Objects at or below a given object's concept, itself excluded.
  auto subconcepts_of = [&](const std::string& object) {
    const std::size_t top = lattice.ObjectConcept(object);
    std::vector<std::size_t> region = lattice.Descendants(top);
    region.push_back(top);
    std::set<std::size_t> region_set(region.begin(), region.end());
    std::vector<std::string> out;
    for (const auto& other : lattice.objects()) {
      if (other == object) continue;
      if (region_set.count(lattice.ObjectConcept(other)) > 0) out.push_back(other);
    }
    return out;
  };

  std::map<DirectedPair, CausalLink> links;
  for (const auto& pair : direct) {
    lattice.ObjectConcept(pair.cause);
    lattice.ObjectConcept(pair.effect);
    links[pair] = CausalLink{pair.cause, pair.effect, LinkProvenance::kDirect, std::nullopt};
  }
  std::vector<DirectedPair> sources(direct.begin(), direct.end());
  std::sort(sources.begin(), sources.end());
  auto add_inherited = [&](const std::string& cause, const std::string& effect,
                           const DirectedPair& source) {
    if (cause == effect) return;
    DirectedPair key{cause, effect};
    // Sources are visited in ascending order, so the first one recorded is the
    // smallest.
    if (links.count(key) > 0) return;
    links[key] = CausalLink{cause, effect, LinkProvenance::kInherited, source};
  };
  for (const auto& src : sources) {
    for (const auto& d : subconcepts_of(src.cause)) add_inherited(d, src.effect, src);
    if (options.propagate_effect_side) {
      for (const auto& d : subconcepts_of(src.effect)) add_inherited(src.cause, d, src);
    }
  }
  std::vector<CausalLink> out;
  out.reserve(links.size());
  for (auto& [_, link] : links) out.push_back(std::move(link));
  return out;
}

}  // namespace causenet
