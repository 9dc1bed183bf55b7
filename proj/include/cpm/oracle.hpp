#pragma once

// Exhaustive reference implementations. They share only the inclusion
// primitives (cover_itemset, find_embedding, subgraph_isomorphic) with the
// miners and are meant for small inputs.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/min_support.hpp"
#include "cpm/pattern.hpp"

namespace cpm::oracle {

struct Bounds {
  std::size_t max_items = 20;         // itemset universe
  std::size_t max_sequence_len = 16;  // longest input sequence
  std::size_t max_graph_edges = 16;   // largest input graph
};

inline std::vector<PatternRecord> frequent_itemsets(const TransactionDB& db, const MinSupport& minsup,
                                                    const Bounds& b = {}) {
  const auto n = db.symbols.size();
  if (n > b.max_items) throw BoundExceeded("oracle: " + std::to_string(n) + " items exceed bound");
  const auto sigma = minsup.effective(db.size());
  std::vector<PatternRecord> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<SymbolId> items;
    for (SymbolId s = 0; s < n; ++s)
      if (mask >> s & 1) items.push_back(s);
    Itemset is(items);
    auto cover = cover_itemset(db, is);
    if (cover.size() >= sigma) out.push_back(make_record(PatternKind::itemset, std::move(is), std::move(cover)));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

inline std::vector<PatternRecord> frequent_sequences(const SequenceDB& db, const MinSupport& minsup,
                                                     std::optional<std::size_t> max_len = std::nullopt,
                                                     const Bounds& b = {}) {
  const auto sigma = minsup.effective(db.size());
  std::set<Sequence> all;
  for (const auto& s : db.sequences) {
    if (s.size() > b.max_sequence_len) throw BoundExceeded("oracle: sequence longer than bound");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s.size()); ++mask) {
      Sequence sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask >> i & 1) sub.symbols.push_back(s.symbols[i]);
      if (!max_len || sub.size() <= *max_len) all.insert(std::move(sub));
    }
  }
  std::vector<PatternRecord> out;
  for (const auto& s : all) {
    auto cover = cover_sequence(db, s);
    if (cover.size() >= sigma) out.push_back(make_record(PatternKind::sequence, s, std::move(cover)));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

// Connected edge-induced subgraphs of every database graph, deduplicated by
// pairwise isomorphism tests (no canonical codes).
inline std::vector<PatternRecord> frequent_graphs(const GraphDB& db, const MinSupport& minsup,
                                                  std::optional<std::size_t> max_edges = std::nullopt,
                                                  const Bounds& b = {}) {
  const auto sigma = minsup.effective(db.size());
  std::vector<LabeledGraph> distinct;
  for (const auto& g : db.graphs) {
    const auto m = g.edge_count();
    if (m > b.max_graph_edges) throw BoundExceeded("oracle: graph larger than bound");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) edges.push_back(g.edges()[i]);
      if (max_edges && edges.size() > *max_edges) continue;
      auto sub = edge_subgraph(g, edges);
      if (!is_connected(sub)) continue;
      if (std::none_of(distinct.begin(), distinct.end(), [&](const LabeledGraph& d) { return isomorphic(d, sub); }))
        distinct.push_back(std::move(sub));
    }
  }
  std::vector<PatternRecord> out;
  for (auto& g : distinct) {
    auto cover = cover_graph(db, g);
    if (cover.size() >= sigma) out.push_back(make_record(PatternKind::graph, std::move(g), std::move(cover)));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.size < y.size; });
  assign_pids(out);
  return out;
}

// Every nonempty edge subset of every (unique-labelled) database graph;
// support by edge-set inclusion.
inline std::vector<PatternRecord> frequent_graphs_unique(const GraphDB& db, const MinSupport& minsup,
                                                         const Bounds& b = {}) {
  const auto sigma = minsup.effective(db.size());
  std::vector<EdgeItemset> hosts;
  for (std::size_t i = 0; i < db.graphs.size(); ++i) {
    const auto& g = db.graphs[i];
    if (!is_unique_labeled(g)) throw InputError("graph " + std::to_string(i + 1) + " is not unique-labelled");
    if (g.edge_count() > b.max_graph_edges) throw BoundExceeded("oracle: graph larger than bound");
    hosts.push_back(g.edge_count() ? edge_itemize(g) : EdgeItemset{});
  }
  std::set<EdgeItemset> all;
  for (const auto& h : hosts)
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << h.size()); ++mask) {
      EdgeItemset sub;
      for (std::size_t i = 0; i < h.size(); ++i)
        if (mask >> i & 1) sub.push_back(h[i]);
      all.insert(std::move(sub));
    }
  std::vector<PatternRecord> out;
  for (const auto& s : all) {
    TidSet cover;
    for (std::size_t i = 0; i < hosts.size(); ++i)
      if (std::includes(hosts[i].begin(), hosts[i].end(), s.begin(), s.end())) cover.push_back(static_cast<Tid>(i + 1));
    if (cover.size() >= sigma)
      out.push_back(make_record(PatternKind::graph_unique, graph_from_edge_keys(s), std::move(cover)));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

// Same patterns (up to isomorphism for graphs) with the same covers,
// ignoring order and pids. Returns a description of the first difference.
inline std::optional<std::string> compare_patterns(const std::vector<PatternRecord>& a,
                                                   const std::vector<PatternRecord>& b) {
  if (a.size() != b.size())
    return "pattern counts differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j) {
      if (used[j] || a[i].kind != b[j].kind || a[i].size != b[j].size || a[i].cover != b[j].cover ||
          a[i].support != b[j].support)
        continue;
      const bool same = a[i].kind == PatternKind::graph ? isomorphic(a[i].graph(), b[j].graph())
                                                        : a[i].pattern == b[j].pattern;
      if (same) used[j] = matched = true;
    }
    if (!matched) return "pattern pid=" + std::to_string(a[i].pid) + " has no counterpart";
  }
  return std::nullopt;
}

}  // namespace cpm::oracle
