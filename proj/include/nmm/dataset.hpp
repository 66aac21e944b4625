#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nmm/kg.hpp"
#include "nmm/types.hpp"

namespace nmm {

struct LabeledTriple {
  Triple triple;
  bool label = true;
};

enum class TripleFileFormat { TsvLabeled, TsvUnlabeled };

inline TripleFileFormat parse_format(const std::string& s) {
  if (s == "tsv-labeled" || s == "labeled") return TripleFileFormat::TsvLabeled;
  if (s == "tsv-unlabeled" || s == "unlabeled")
    return TripleFileFormat::TsvUnlabeled;
  throw std::invalid_argument("unknown format '" + s +
                              "' (expected tsv-labeled or tsv-unlabeled)");
}

struct Dataset {
  KnowledgeGraph graph;
  std::vector<LabeledTriple> valid;
  std::vector<LabeledTriple> test;

  std::vector<Triple> valid_positives() const;
  std::vector<Triple> test_positives() const;

  // Known-true triples across all splits: train plus the positive halves of
  // valid and test. Used by the "Filtered" ranking protocol.
  TripleSet filter_set() const;
};

struct LoadOptions {
  TripleFileFormat format = TripleFileFormat::TsvLabeled;
  // Non-fatal diagnostics (e.g. unbalanced labels); defaults to stderr.
  std::function<void(const std::string&)> warn;
};

// Parses tab-separated triple files (head <TAB> relation <TAB> tail, with an
// optional fourth column "1"/"-1" in labeled format). The vocabulary spans all
// three splits; only train rows enter graph.train().
Dataset load_dataset(const std::string& train_path,
                     const std::string& valid_path,
                     const std::string& test_path,
                     const LoadOptions& opts = {});

struct RelationCorruptionStat {
  double tph = 0;     // mean distinct tails per head
  double hpt = 0;     // mean distinct heads per tail
  double p_head = 0.5;  // probability of corrupting the head slot
};

struct BernoulliStats {
  std::vector<RelationCorruptionStat> per_relation;  // by base relation id

  double p_head(std::uint32_t r) const {
    return r < per_relation.size() ? per_relation[r].p_head : 0.5;
  }
};

BernoulliStats bernoulli_stats(const KnowledgeGraph& g);

}  // namespace nmm
