#include "nmm/dataset.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nmm {

namespace {

struct RawRow {
  std::string head, relation, tail;
  bool label = true;
};

std::vector<RawRow> parse_triple_file(const std::string& path,
                                      TripleFileFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open triple file: " + path);

  std::vector<RawRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }

    auto fail = [&](const std::string& what) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               what);
    };
    if (format == TripleFileFormat::TsvUnlabeled) {
      if (fields.size() != 3) fail("expected 3 columns");
    } else if (fields.size() != 3 && fields.size() != 4) {
      fail("expected 3 or 4 columns");
    }

    RawRow row;
    row.head = fields[0];
    row.relation = fields[1];
    row.tail = fields[2];
    if (fields.size() == 4) {
      if (fields[3] == "1")
        row.label = true;
      else if (fields[3] == "-1")
        row.label = false;
      else
        fail("unknown label token '" + fields[3] + "' (expected 1 or -1)");
    }
    if (row.head.empty() || row.relation.empty() || row.tail.empty())
      fail("empty field");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LabeledTriple> intern_rows(KnowledgeGraph& g,
                                       const std::vector<RawRow>& rows) {
  std::vector<LabeledTriple> out;
  out.reserve(rows.size());
  for (const RawRow& r : rows) {
    LabeledTriple lt;
    lt.triple.head = g.intern_entity(r.head);
    lt.triple.relation = g.intern_relation(r.relation);
    lt.triple.tail = g.intern_entity(r.tail);
    lt.label = r.label;
    out.push_back(lt);
  }
  return out;
}

void warn_if_unbalanced(const std::vector<LabeledTriple>& split,
                        const std::string& name,
                        const std::function<void(const std::string&)>& warn) {
  std::size_t pos = 0, neg = 0;
  for (const auto& lt : split) (lt.label ? pos : neg)++;
  if (pos != neg) {
    std::ostringstream msg;
    msg << name << " split has " << pos << " correct vs " << neg
        << " incorrect triples (expected equal counts)";
    warn(msg.str());
  }
}

}  // namespace

std::vector<Triple> Dataset::valid_positives() const {
  std::vector<Triple> out;
  for (const auto& lt : valid)
    if (lt.label) out.push_back(lt.triple);
  return out;
}

std::vector<Triple> Dataset::test_positives() const {
  std::vector<Triple> out;
  for (const auto& lt : test)
    if (lt.label) out.push_back(lt.triple);
  return out;
}

TripleSet Dataset::filter_set() const {
  TripleSet s;
  s.reserve(graph.train().size() + valid.size() + test.size());
  for (const Triple& t : graph.train()) s.insert(t);
  for (const auto& lt : valid)
    if (lt.label) s.insert(lt.triple);
  for (const auto& lt : test)
    if (lt.label) s.insert(lt.triple);
  return s;
}

Dataset load_dataset(const std::string& train_path,
                     const std::string& valid_path,
                     const std::string& test_path, const LoadOptions& opts) {
  std::function<void(const std::string&)> warn = opts.warn;
  if (!warn)
    warn = [](const std::string& msg) {
      std::cerr << "warning: " << msg << "\n";
    };

  const auto train_rows = parse_triple_file(train_path, opts.format);
  const auto valid_rows = parse_triple_file(valid_path, opts.format);
  const auto test_rows = parse_triple_file(test_path, opts.format);

  Dataset ds;
  for (const RawRow& r : train_rows) {
    if (!r.label)
      throw std::runtime_error(train_path +
                               ": train split contains a -1 labeled triple");
    Triple t;
    t.head = ds.graph.intern_entity(r.head);
    t.relation = ds.graph.intern_relation(r.relation);
    t.tail = ds.graph.intern_entity(r.tail);
    ds.graph.add_train_triple(t);  // duplicates dropped
  }
  ds.valid = intern_rows(ds.graph, valid_rows);
  ds.test = intern_rows(ds.graph, test_rows);

  if (opts.format == TripleFileFormat::TsvLabeled) {
    warn_if_unbalanced(ds.valid, "valid", warn);
    warn_if_unbalanced(ds.test, "test", warn);
  }
  return ds;
}

BernoulliStats bernoulli_stats(const KnowledgeGraph& g) {
  if (g.train().empty())
    throw std::invalid_argument("bernoulli_stats needs a non-empty train set");

  // Distinct-entity counts: triples are deduplicated, so per-relation triple
  // counts already count distinct (head, tail) pairs.
  const std::size_t nr = g.num_relations();
  std::vector<std::unordered_set<EntityId>> heads(nr), tails(nr);
  std::vector<std::size_t> triples(nr, 0);
  for (const Triple& t : g.train()) {
    heads[t.relation].insert(t.head);
    tails[t.relation].insert(t.tail);
    ++triples[t.relation];
  }

  BernoulliStats stats;
  stats.per_relation.resize(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    auto& s = stats.per_relation[r];
    if (triples[r] == 0) continue;  // relation only in valid/test: keep 0.5
    s.tph = static_cast<double>(triples[r]) / heads[r].size();
    s.hpt = static_cast<double>(triples[r]) / tails[r].size();
    const double denom = s.tph + s.hpt;
    s.p_head = denom > 0 ? s.tph / denom : 0.5;
  }
  return stats;
}

}  // namespace nmm
