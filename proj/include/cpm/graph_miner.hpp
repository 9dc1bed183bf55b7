#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpm/graph.hpp"
#include "cpm/itemset_miner.hpp"
#include "cpm/min_support.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

// Unique-labelled graphs reduce to itemsets over endpoint-label pairs;
// patterns are edge sets and may be disconnected.
inline std::vector<PatternRecord> mine_frequent_graphs_unique(const GraphDB& db, const MinSupport& minsup,
                                                              const MinerOptions& opts = {}) {
  if (db.size() == 0) throw PreconditionError("mine_frequent_graphs_unique: empty database");
  TransactionDB edges;
  std::vector<EdgeKey> keys;
  for (std::size_t i = 0; i < db.graphs.size(); ++i) {
    const auto& g = db.graphs[i];
    if (!is_unique_labeled(g)) throw InputError("graph " + std::to_string(i + 1) + " is not unique-labelled");
    std::vector<SymbolId> items;
    for (const auto& e : g.edges()) {
      const EdgeKey k{std::min(g.label(e.u), g.label(e.v)), std::max(g.label(e.u), g.label(e.v))};
      const auto id = edges.symbols.intern(std::to_string(k.lo) + "," + std::to_string(k.hi));
      if (id == keys.size()) keys.push_back(k);
      items.push_back(id);
    }
    edges.transactions.emplace_back(std::move(items));
  }

  auto itemsets = mine_frequent_itemsets(edges, minsup, opts);
  std::vector<PatternRecord> out;
  out.reserve(itemsets.size());
  for (auto& rec : itemsets) {
    EdgeItemset set;
    for (auto id : rec.itemset().items()) set.push_back(keys[id]);
    std::sort(set.begin(), set.end());
    out.push_back(make_record(PatternKind::graph_unique, graph_from_edge_keys(set), std::move(rec.cover)));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

namespace detail {

// One occurrence of a pattern: the database graph and the host vertex of
// each pattern vertex.
struct Occurrence {
  Tid gid;
  std::vector<VertexIndex> image;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

struct GrowthNode {
  LabeledGraph pattern;  // canonical vertex order
  std::vector<Occurrence> occurrences;
};

// A one-edge extension expressed in the parent's vertex numbering; `to` is
// the new vertex (== parent vertex count) for forward edges.
struct ExtensionKey {
  VertexIndex from;
  VertexIndex to;
  SymbolId new_label;
  SymbolId edge_label;
  friend auto operator<=>(const ExtensionKey&, const ExtensionKey&) = default;
};

inline std::pair<CanonicalCode, std::vector<VertexIndex>> canonicalize(const LabeledGraph& g) {
  return Canonicalizer(g).run();
}

// Adds (code -> node) with occurrences re-expressed in canonical order.
inline void merge_candidate(std::map<CanonicalCode, GrowthNode>& level, const LabeledGraph& raw,
                            const std::vector<Occurrence>& raw_occ) {
  auto [code, order] = canonicalize(raw);
  auto it = level.find(code);
  if (it == level.end()) {
    GrowthNode node;
    std::vector<VertexIndex> position(raw.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) {
      position[order[i]] = static_cast<VertexIndex>(i);
      node.pattern.add_vertex(raw.label(order[i]));
    }
    for (const auto& e : raw.edges()) node.pattern.add_edge(position[e.u], position[e.v], e.label);
    it = level.emplace(std::move(code), std::move(node)).first;
  }
  for (const auto& occ : raw_occ) {
    Occurrence c{occ.gid, std::vector<VertexIndex>(order.size())};
    for (std::size_t i = 0; i < order.size(); ++i) c.image[i] = occ.image[order[i]];
    it->second.occurrences.push_back(std::move(c));
  }
}

// Keeps one occurrence per distinct host edge set (automorphic images of
// the same host subgraph extend identically).
inline void dedup_occurrences(GrowthNode& node) {
  std::map<std::pair<Tid, std::vector<std::pair<VertexIndex, VertexIndex>>>, std::size_t> seen;
  std::vector<Occurrence> kept;
  for (auto& occ : node.occurrences) {
    std::vector<std::pair<VertexIndex, VertexIndex>> used;
    for (const auto& e : node.pattern.edges()) {
      auto a = occ.image[e.u], b = occ.image[e.v];
      used.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(used.begin(), used.end());
    if (seen.emplace(std::make_pair(occ.gid, std::move(used)), kept.size()).second) kept.push_back(std::move(occ));
  }
  node.occurrences = std::move(kept);
}

inline TidSet occurrence_gids(const GrowthNode& node) {
  TidSet gids;
  for (const auto& occ : node.occurrences) gids.push_back(occ.gid);
  std::sort(gids.begin(), gids.end());
  gids.erase(std::unique(gids.begin(), gids.end()), gids.end());
  return gids;
}

}  // namespace detail

// Connected patterns with 1..max_edges edges, support counted per database
// graph, deduplicated up to isomorphism. Level-wise growth by one edge from
// every occurrence of every frequent pattern; every connected pattern with
// k+1 edges has a connected k-edge subpattern, so the search is complete.
inline std::vector<PatternRecord> mine_frequent_graphs_general(const GraphDB& db, const MinSupport& minsup,
                                                               std::optional<std::size_t> max_edges = std::nullopt) {
  if (db.size() == 0) throw PreconditionError("mine_frequent_graphs_general: empty database");
  if (max_edges && *max_edges == 0) throw PreconditionError("mine_frequent_graphs_general: max_edges must be positive");
  const auto sigma = minsup.effective(db.size());
  std::vector<PatternRecord> out;
  if (sigma > db.size()) return out;

  std::map<CanonicalCode, detail::GrowthNode> level;
  for (std::size_t gi = 0; gi < db.graphs.size(); ++gi) {
    const auto& g = db.graphs[gi];
    for (const auto& e : g.edges()) {
      LabeledGraph single;
      single.add_vertex(g.label(e.u));
      single.add_vertex(g.label(e.v));
      single.add_edge(0, 1, e.label);
      detail::merge_candidate(level, single, {{static_cast<Tid>(gi + 1), {e.u, e.v}}});
    }
  }

  for (std::size_t edges = 1; !level.empty(); ++edges) {
    std::map<CanonicalCode, detail::GrowthNode> next;
    for (auto& [code, node] : level) {
      detail::dedup_occurrences(node);
      auto gids = detail::occurrence_gids(node);
      if (gids.size() < sigma) continue;
      if (!max_edges || edges < *max_edges) {
        const auto& p = node.pattern;
        const auto n = static_cast<VertexIndex>(p.vertex_count());
        std::map<detail::ExtensionKey, std::vector<detail::Occurrence>> grown;
        for (const auto& occ : node.occurrences) {
          const auto& host = db.graphs[occ.gid - 1];
          std::vector<std::optional<VertexIndex>> preimage(host.vertex_count());
          for (VertexIndex v = 0; v < n; ++v) preimage[occ.image[v]] = v;
          for (VertexIndex a = 0; a < n; ++a) {
            for (const auto& [hy, elabel] : host.neighbors(occ.image[a])) {
              if (const auto b = preimage[hy]) {
                if (*b < a || p.edge_label(a, *b)) continue;  // each backward edge once
                grown[detail::ExtensionKey{a, *b, 0, elabel}].push_back(occ);
              } else {
                auto ext = occ;
                ext.image.push_back(hy);
                grown[detail::ExtensionKey{a, n, host.label(hy), elabel}].push_back(std::move(ext));
              }
            }
          }
        }
        for (const auto& [key, occs] : grown) {
          LabeledGraph child = p;
          if (key.to == n) child.add_vertex(key.new_label);
          child.add_edge(key.from, key.to, key.edge_label);
          detail::merge_candidate(next, child, occs);
        }
      }
      out.push_back(make_record(PatternKind::graph, node.pattern, std::move(gids)));
    }
    level = std::move(next);
  }

  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

}  // namespace cpm
