#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nmm/kg.hpp"
#include "nmm/types.hpp"

namespace nmm {

// All learnable state. The inverse relation vector v_{r^-1} = -v_r is derived,
// never stored. beta rows/columns run over the 2*|R| directed relations,
// forward block first.
struct ModelParams {
  std::size_t dim = 0;
  std::size_t num_entities = 0;
  std::size_t num_relations = 0;
  std::vector<double> entity_vec;    // num_entities x dim
  std::vector<double> relation_vec;  // num_relations x dim
  std::vector<double> alpha;         // num_entities
  std::vector<double> beta;          // (2 num_relations)^2

  // Entity and relation vectors uniform in (-6/sqrt(k), 6/sqrt(k)); relation
  // vectors L2-normalized once; alpha = beta = 0.
  static ModelParams init_random(std::size_t n_entities,
                                 std::size_t n_relations, std::size_t k,
                                 Rng& rng);
  static ModelParams zeros(std::size_t n_entities, std::size_t n_relations,
                           std::size_t k);

  std::span<double> entity(EntityId e) {
    return {entity_vec.data() + e * dim, dim};
  }
  std::span<const double> entity(EntityId e) const {
    return {entity_vec.data() + e * dim, dim};
  }
  std::span<double> relation(std::uint32_t r) {
    return {relation_vec.data() + r * dim, dim};
  }
  std::span<const double> relation(std::uint32_t r) const {
    return {relation_vec.data() + r * dim, dim};
  }

  std::size_t beta_flat(RelationId query, RelationId nbr) const {
    return directed_index(query, num_relations) * 2 * num_relations +
           directed_index(nbr, num_relations);
  }
  double& beta_at(RelationId query, RelationId nbr) {
    return beta[beta_flat(query, nbr)];
  }
  double beta_at(RelationId query, RelationId nbr) const {
    return beta[beta_flat(query, nbr)];
  }

  bool same_shape(const ModelParams& o) const {
    return dim == o.dim && num_entities == o.num_entities &&
           num_relations == o.num_relations;
  }
};

// Mixture weights over one effective neighborhood: `self` multiplies the
// entity's own vector, `neighbor[i]` the i-th supplied pair. They sum to 1.
struct MixtureWeights {
  double self = 1.0;
  std::vector<double> neighbor;
};

MixtureWeights mixture_weights(const ModelParams& p, const Hyperparams& hp,
                               EntityId e, RelationId query,
                               std::span<const NeighborPair> nbrs);

// u_{e,r} = v_e + v_r (v_e - v_r for inverse relations).
void relation_dependent_vector(const ModelParams& p, EntityId e, RelationId r,
                               std::span<double> out);
std::vector<double> relation_dependent_vector(const ModelParams& p, EntityId e,
                                              RelationId r);

// Neighborhood-mixed representation of e for the given query relation:
// self-weight times v_e plus the weighted translated neighbor vectors.
std::vector<double> neighbor_repr(const ModelParams& p, const Hyperparams& hp,
                                  const NeighborIndex& idx, EntityId e,
                                  RelationId query,
                                  std::optional<EntityId> exclude);

// Scratch for one side of a scored triple. Reused across calls.
struct SideState {
  EntityId entity = 0;
  RelationId query;
  std::vector<NeighborPair> pairs;  // effective neighborhood
  std::vector<double> weight;       // normalized neighbor weights b_i
  std::vector<double> rep;          // mixed representation, dim entries
  double self_weight = 1.0;         // a
  double exp_alpha = 1.0;
  double z = 1.0;                   // normalizer
};

struct ScoreParts {
  SideState head, tail;
  std::vector<double> diff;  // rep_head + v_r - rep_tail
  double value = 0;
};

struct Workspace {
  ScoreParts pos, neg;
  std::vector<double> upstream;
};

// Implausibility score: norm of the translated difference between the two
// neighborhood-mixed representations. The head side excludes t, the tail side
// excludes h. Lower is more plausible.
double score(const ModelParams& p, const Hyperparams& hp,
             const NeighborIndex& idx, EntityId h, std::uint32_t r, EntityId t,
             Workspace& ws);
double score(const ModelParams& p, const Hyperparams& hp,
             const NeighborIndex& idx, EntityId h, std::uint32_t r, EntityId t);

// Sparse gradient accumulator backed by dense scratch plus touched-id lists,
// so it can be reused across samples without reallocating.
class GradientSet {
 public:
  void configure(std::size_t n_entities, std::size_t n_relations,
                 std::size_t dim);
  void clear();

  void add_entity(EntityId e, double scale, std::span<const double> x);
  void add_relation(std::uint32_t r, double scale, std::span<const double> x);
  void add_alpha(EntityId e, double g);
  void add_beta(std::size_t flat, double g);

  std::span<const EntityId> touched_entities() const { return touched_e_; }
  std::span<const std::uint32_t> touched_relations() const {
    return touched_r_;
  }
  std::span<const EntityId> touched_alphas() const { return touched_a_; }
  std::span<const std::size_t> touched_betas() const { return touched_b_; }

  std::span<const double> entity_grad(EntityId e) const {
    return {ge_.data() + e * dim_, dim_};
  }
  std::span<const double> relation_grad(std::uint32_t r) const {
    return {gr_.data() + r * dim_, dim_};
  }
  double alpha_grad(EntityId e) const { return ga_[e]; }
  double beta_grad(std::size_t flat) const { return gb_[flat]; }

  std::span<double> entity_grad_mut(EntityId e) {
    return {ge_.data() + e * dim_, dim_};
  }
  std::span<double> relation_grad_mut(std::uint32_t r) {
    return {gr_.data() + r * dim_, dim_};
  }
  double& alpha_grad_mut(EntityId e) { return ga_[e]; }
  double& beta_grad_mut(std::size_t flat) { return gb_[flat]; }

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> ge_, gr_, ga_, gb_;
  std::vector<std::uint8_t> seen_e_, seen_r_, seen_a_, seen_b_;
  std::vector<EntityId> touched_e_, touched_a_;
  std::vector<std::uint32_t> touched_r_;
  std::vector<std::size_t> touched_b_;
};

// Which parameter blocks receive gradients; the alternating schedule freezes
// one block per stage.
struct GradMask {
  bool vectors = true;
  bool mixing = true;
};

// Hinge loss [margin + f(pos) - f(neg)]_+ with exact partial derivatives for
// every parameter either score touches. The L2 regularizer on alpha/beta is
// applied by the trainer per batch, not here. Inactive hinge: loss 0, no
// gradients added.
double loss_and_gradients(const ModelParams& p, const Hyperparams& hp,
                          const NeighborIndex& idx, const Triple& pos,
                          const Triple& neg, GradientSet& grads, Workspace& ws,
                          GradMask mask = {});

std::pair<double, GradientSet> loss_and_gradients(const ModelParams& p,
                                                  const Hyperparams& hp,
                                                  const NeighborIndex& idx,
                                                  const Triple& pos,
                                                  const Triple& neg);

}  // namespace nmm
