#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nmm {

using EntityId = std::uint32_t;

// A relation type together with a direction flag. `index` addresses the base
// relation vocabulary; `inverse` selects the reversed edge r^-1.
struct RelationId {
  std::uint32_t index = 0;
  bool inverse = false;

  RelationId inverted() const { return {index, !inverse}; }
  friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

// Dense index into arrays sized 2*|R|: forward relations first, then inverses.
inline std::size_t directed_index(RelationId r, std::size_t num_relations) {
  return static_cast<std::size_t>(r.index) + (r.inverse ? num_relations : 0);
}

// Stored triples always carry a base (non-inverse) relation.
struct Triple {
  EntityId head = 0;
  std::uint32_t relation = 0;
  EntityId tail = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = mix64(t.head);
    h = mix64(h ^ t.relation);
    h = mix64(h ^ t.tail);
    return static_cast<std::size_t>(h);
  }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

enum class Norm { L1, L2 };

inline const char* to_string(Norm n) { return n == Norm::L1 ? "l1" : "l2"; }

inline Norm parse_norm(const std::string& s) {
  if (s == "l1" || s == "L1") return Norm::L1;
  if (s == "l2" || s == "L2") return Norm::L2;
  throw std::invalid_argument("unknown norm '" + s + "' (expected l1 or l2)");
}

enum class ProjectionCadence { PerBatch, PerEpoch };

inline const char* to_string(ProjectionCadence c) {
  return c == ProjectionCadence::PerBatch ? "batch" : "epoch";
}

inline ProjectionCadence parse_projection_cadence(const std::string& s) {
  if (s == "batch") return ProjectionCadence::PerBatch;
  if (s == "epoch") return ProjectionCadence::PerEpoch;
  throw std::invalid_argument("unknown projection cadence '" + s +
                              "' (expected batch or epoch)");
}

struct Hyperparams {
  std::size_t dim = 50;          // embedding dimension k
  double margin = 1.0;           // hinge margin gamma
  double learning_rate = 0.01;   // RMSProp step size eta
  double l2_reg = 0.01;          // lambda on the mixing parameters
  double mixture_bias = 1.0;     // delta added to the self-weight
  std::uint32_t tau = 10;        // neighbor-set admission threshold
  Norm norm = Norm::L2;
  std::size_t batch_size = 100;
  std::size_t epochs_per_stage = 200;
  std::uint64_t seed = 42;
  std::size_t negatives_per_positive = 1;
  double rmsprop_decay = 0.9;
  double rmsprop_epsilon = 1e-8;
  ProjectionCadence projection = ProjectionCadence::PerBatch;

  void validate() const {
    if (dim == 0) throw std::invalid_argument("dim must be >= 1");
    if (!(margin > 0)) throw std::invalid_argument("margin must be > 0");
    if (!(learning_rate > 0)) throw std::invalid_argument("lr must be > 0");
    if (l2_reg < 0) throw std::invalid_argument("lambda must be >= 0");
    if (mixture_bias < 0) throw std::invalid_argument("delta must be >= 0");
    if (batch_size == 0) throw std::invalid_argument("batch size must be >= 1");
    if (epochs_per_stage == 0)
      throw std::invalid_argument("epochs per stage must be >= 1");
    if (negatives_per_positive == 0)
      throw std::invalid_argument("negatives per positive must be >= 1");
    if (!(rmsprop_decay > 0 && rmsprop_decay < 1))
      throw std::invalid_argument("rmsprop decay must be in (0,1)");
    if (!(rmsprop_epsilon > 0))
      throw std::invalid_argument("rmsprop epsilon must be > 0");
  }
};

// Deterministic random source. All sampling goes through explicit helpers so
// runs reproduce bit-for-bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, n), unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = eng_();
      if (x >= threshold) return x % n;
    }
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[next_below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nmm
