#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nmm/types.hpp"

namespace nmm {

// One (entity, relation) neighbor of some center entity. Pair lists are kept
// sorted by (relation, entity) so mixture sums are reproducible.
struct NeighborPair {
  EntityId entity = 0;
  RelationId relation;
  friend bool operator==(const NeighborPair&, const NeighborPair&) = default;
};

inline bool pair_order(const NeighborPair& a, const NeighborPair& b) {
  if (a.relation != b.relation) return a.relation < b.relation;
  return a.entity < b.entity;
}

// In-memory knowledge graph: string vocabularies with dense ids assigned in
// first-seen order, plus the deduplicated training triple set G. The symmetric
// closure K (every (h,r,t) mirrored as (t,r^-1,h)) is derived, never stored.
class KnowledgeGraph {
 public:
  EntityId intern_entity(std::string_view name);
  std::uint32_t intern_relation(std::string_view name);

  // Returns false when the triple was already present.
  bool add_train_triple(const Triple& t);

  std::size_t num_entities() const { return entity_names_.size(); }
  std::size_t num_relations() const { return relation_names_.size(); }
  const std::vector<Triple>& train() const { return train_; }

  // Exact membership in G (the closure is not consulted).
  bool contains(const Triple& t) const { return train_set_.count(t) > 0; }

  std::optional<EntityId> find_entity(std::string_view name) const;
  std::optional<std::uint32_t> find_relation(std::string_view name) const;
  const std::string& entity_name(EntityId e) const { return entity_names_[e]; }
  const std::string& relation_name(std::uint32_t r) const {
    return relation_names_[r];
  }
  const std::vector<std::string>& entity_names() const { return entity_names_; }
  const std::vector<std::string>& relation_names() const {
    return relation_names_;
  }

  // Content hash of both vocabularies (order-sensitive); checkpoints use it to
  // refuse mismatched datasets.
  std::uint64_t vocab_hash() const;

  // Visits K as (head, directed relation, tail).
  template <class F>
  void for_each_closure(F&& f) const {
    for (const Triple& t : train_) {
      f(t.head, RelationId{t.relation, false}, t.tail);
      f(t.tail, RelationId{t.relation, true}, t.head);
    }
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  template <class V>
  using NameMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

  std::vector<std::string> entity_names_;
  std::vector<std::string> relation_names_;
  NameMap<EntityId> entity_ids_;
  NameMap<std::uint32_t> relation_ids_;
  std::vector<Triple> train_;
  TripleSet train_set_;
};

KnowledgeGraph build_graph(const std::vector<std::array<std::string, 3>>& rows);

// Per-(entity, directed relation) neighbor sets N_{e,r} = {e' : (e',r,e) in K},
// built from the training split only, plus the tau-admitted pair view
// N_e = {(e',r) : e' in N_{e,r}, |N_{e,r}| <= tau}. Sets larger than tau are
// dropped whole, never truncated. Immutable after construction.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  NeighborIndex(const KnowledgeGraph& g, std::uint32_t tau);

  std::uint32_t tau() const { return tau_; }
  std::size_t num_relations() const { return num_relations_; }

  // Full (unfiltered) neighbor set N_{e,r}, sorted by entity id.
  std::span<const EntityId> neighbors(EntityId e, RelationId r) const;

  // Admitted pair set N_e, sorted by (relation, entity).
  std::span<const NeighborPair> pairs(EntityId e) const;

  // N_e with every pair whose entity equals `exclude` removed.
  std::vector<NeighborPair> effective_neighborhood(
      EntityId e, std::optional<EntityId> exclude) const;

 private:
  struct SetRef {
    RelationId rel;
    std::uint32_t begin = 0;
    std::uint32_t size = 0;
  };

  std::uint32_t tau_ = 0;
  std::size_t num_relations_ = 0;
  std::vector<std::uint32_t> set_offsets_;  // per entity, into sets_
  std::vector<SetRef> sets_;
  std::vector<EntityId> members_;
  std::vector<std::uint32_t> pair_offsets_;  // per entity, into pairs_
  std::vector<NeighborPair> pairs_;
};

inline NeighborIndex build_neighbor_index(const KnowledgeGraph& g,
                                          std::uint32_t tau) {
  return NeighborIndex(g, tau);
}

}  // namespace nmm
