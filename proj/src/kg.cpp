#include "nmm/kg.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace nmm {

EntityId KnowledgeGraph::intern_entity(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("entity name must be non-empty");
  auto it = entity_ids_.find(name);
  if (it != entity_ids_.end()) return it->second;
  const auto id = static_cast<EntityId>(entity_names_.size());
  entity_names_.emplace_back(name);
  entity_ids_.emplace(entity_names_.back(), id);
  return id;
}

std::uint32_t KnowledgeGraph::intern_relation(std::string_view name) {
  if (name.empty())
    throw std::invalid_argument("relation name must be non-empty");
  auto it = relation_ids_.find(name);
  if (it != relation_ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(relation_names_.size());
  relation_names_.emplace_back(name);
  relation_ids_.emplace(relation_names_.back(), id);
  return id;
}

bool KnowledgeGraph::add_train_triple(const Triple& t) {
  if (t.head >= num_entities() || t.tail >= num_entities() ||
      t.relation >= num_relations())
    throw std::invalid_argument("triple refers to an unknown id");
  if (!train_set_.insert(t).second) return false;
  train_.push_back(t);
  return true;
}

std::optional<EntityId> KnowledgeGraph::find_entity(
    std::string_view name) const {
  auto it = entity_ids_.find(name);
  if (it == entity_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> KnowledgeGraph::find_relation(
    std::string_view name) const {
  auto it = relation_ids_.find(name);
  if (it == relation_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t KnowledgeGraph::vocab_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  };
  mix("entities");
  for (const auto& name : entity_names_) mix(name);
  mix("relations");
  for (const auto& name : relation_names_) mix(name);
  return h;
}

KnowledgeGraph build_graph(const std::vector<std::array<std::string, 3>>& rows) {
  KnowledgeGraph g;
  for (const auto& row : rows) {
    Triple t;
    t.head = g.intern_entity(row[0]);
    t.relation = g.intern_relation(row[1]);
    t.tail = g.intern_entity(row[2]);
    g.add_train_triple(t);
  }
  return g;
}

NeighborIndex::NeighborIndex(const KnowledgeGraph& g, std::uint32_t tau)
    : tau_(tau), num_relations_(g.num_relations()) {
  const std::size_t n = g.num_entities();

  // Closure edges keyed by center entity: e' lands in N_{e,r} iff
  // (e', r, e) is in K.
  std::vector<std::tuple<EntityId, RelationId, EntityId>> edges;
  edges.reserve(2 * g.train().size());
  for (const Triple& t : g.train()) {
    edges.emplace_back(t.tail, RelationId{t.relation, false}, t.head);
    edges.emplace_back(t.head, RelationId{t.relation, true}, t.tail);
  }
  std::sort(edges.begin(), edges.end());

  set_offsets_.assign(n + 1, 0);
  pair_offsets_.assign(n + 1, 0);
  members_.reserve(edges.size());

  std::size_t i = 0;
  for (EntityId e = 0; e < n; ++e) {
    set_offsets_[e] = static_cast<std::uint32_t>(sets_.size());
    pair_offsets_[e] = static_cast<std::uint32_t>(pairs_.size());
    while (i < edges.size() && std::get<0>(edges[i]) == e) {
      const RelationId rel = std::get<1>(edges[i]);
      const auto begin = static_cast<std::uint32_t>(members_.size());
      while (i < edges.size() && std::get<0>(edges[i]) == e &&
             std::get<1>(edges[i]) == rel) {
        members_.push_back(std::get<2>(edges[i]));
        ++i;
      }
      const auto size = static_cast<std::uint32_t>(members_.size()) - begin;
      sets_.push_back({rel, begin, size});
      if (size <= tau_) {
        for (std::uint32_t m = begin; m < begin + size; ++m)
          pairs_.push_back({members_[m], rel});
      }
    }
  }
  set_offsets_[n] = static_cast<std::uint32_t>(sets_.size());
  pair_offsets_[n] = static_cast<std::uint32_t>(pairs_.size());
}

std::span<const EntityId> NeighborIndex::neighbors(EntityId e,
                                                   RelationId r) const {
  if (e + 1 >= set_offsets_.size()) return {};
  const auto lo = sets_.begin() + set_offsets_[e];
  const auto hi = sets_.begin() + set_offsets_[e + 1];
  auto it = std::lower_bound(
      lo, hi, r, [](const SetRef& s, RelationId key) { return s.rel < key; });
  if (it == hi || it->rel != r) return {};
  return {members_.data() + it->begin, it->size};
}

std::span<const NeighborPair> NeighborIndex::pairs(EntityId e) const {
  if (e + 1 >= pair_offsets_.size()) return {};
  return {pairs_.data() + pair_offsets_[e],
          pair_offsets_[e + 1] - pair_offsets_[e]};
}

std::vector<NeighborPair> NeighborIndex::effective_neighborhood(
    EntityId e, std::optional<EntityId> exclude) const {
  std::vector<NeighborPair> out;
  for (const NeighborPair& p : pairs(e))
    if (!exclude || p.entity != *exclude) out.push_back(p);
  return out;
}

}  // namespace nmm
