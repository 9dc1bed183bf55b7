#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/symbol_table.hpp"

namespace cpm {

using VertexIndex = std::uint32_t;

// Reserved edge label used when the input gives none.
inline constexpr SymbolId kDefaultEdgeLabel = 0;

struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;
  SymbolId label = kDefaultEdgeLabel;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph with labelled vertices and edges. Vertices are
// addressed by dense index; edges are stored once with u < v and kept sorted.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  VertexIndex add_vertex(SymbolId label) {
    labels_.push_back(label);
    adjacency_.emplace_back();
    return static_cast<VertexIndex>(labels_.size() - 1);
  }

  void add_edge(VertexIndex u, VertexIndex v, SymbolId label = kDefaultEdgeLabel) {
    if (u >= labels_.size() || v >= labels_.size())
      throw PreconditionError("edge endpoint is not a declared vertex");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (edge_label(u, v)) throw PreconditionError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    const Edge e{u, v, label};
    edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
    insert_neighbor(u, v, label);
    insert_neighbor(v, u, label);
  }

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  SymbolId label(VertexIndex v) const { return labels_[v]; }
  const std::vector<SymbolId>& labels() const noexcept { return labels_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t degree(VertexIndex v) const { return adjacency_[v].size(); }

  // Neighbours of v as (neighbour, edge label), sorted by neighbour.
  const std::vector<std::pair<VertexIndex, SymbolId>>& neighbors(VertexIndex v) const { return adjacency_[v]; }

  std::optional<SymbolId> edge_label(VertexIndex u, VertexIndex v) const {
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), std::pair<VertexIndex, SymbolId>{v, 0},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == adj.end() || it->first != v) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }
  friend bool operator<(const LabeledGraph& a, const LabeledGraph& b) {
    return std::tie(a.labels_, a.edges_) < std::tie(b.labels_, b.edges_);
  }

 private:
  void insert_neighbor(VertexIndex at, VertexIndex nbr, SymbolId label) {
    auto& adj = adjacency_[at];
    const std::pair<VertexIndex, SymbolId> entry{nbr, label};
    adj.insert(std::upper_bound(adj.begin(), adj.end(), entry), entry);
  }

  std::vector<SymbolId> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<VertexIndex, SymbolId>>> adjacency_;
};

inline bool is_connected(const LabeledGraph& g) {
  const auto n = g.vertex_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& [w, _] : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

// Graph made of the given edges of g, keeping only vertices they touch
// (in ascending original index).
inline LabeledGraph edge_subgraph(const LabeledGraph& g, const std::vector<Edge>& edges) {
  std::vector<VertexIndex> remap(g.vertex_count(), static_cast<VertexIndex>(-1));
  for (const auto& e : edges) remap[e.u] = remap[e.v] = 0;
  LabeledGraph out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (remap[v] == 0) remap[v] = out.add_vertex(g.label(v));
  for (const auto& e : edges) out.add_edge(remap[e.u], remap[e.v], e.label);
  return out;
}

namespace detail {

// Matching order: each vertex after the first of its component has an
// earlier neighbour, which restricts candidates to that neighbour's image.
struct MatchPlan {
  std::vector<VertexIndex> order;
  std::vector<std::optional<VertexIndex>> parent;
};

inline MatchPlan plan_match(const LabeledGraph& p) {
  const auto n = p.vertex_count();
  MatchPlan plan;
  plan.parent.assign(n, std::nullopt);
  std::vector<bool> placed(n, false);
  while (plan.order.size() < n) {
    VertexIndex root = 0;
    bool found = false;
    for (VertexIndex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (!found || p.degree(v) > p.degree(root)) root = v;
      found = true;
    }
    placed[root] = true;
    std::size_t head = plan.order.size();
    plan.order.push_back(root);
    while (head < plan.order.size()) {
      const auto v = plan.order[head++];
      for (const auto& [w, _] : p.neighbors(v)) {
        if (placed[w]) continue;
        placed[w] = true;
        plan.parent[w] = v;
        plan.order.push_back(w);
      }
    }
  }
  return plan;
}

class Matcher {
 public:
  using Callback = std::function<bool(const std::vector<VertexIndex>&)>;

  Matcher(const LabeledGraph& p, const LabeledGraph& host, Callback cb)
      : p_(p), host_(host), plan_(plan_match(p)), cb_(std::move(cb)),
        image_(p.vertex_count(), 0), used_(host.vertex_count(), false) {}

  // Returns false when the callback asked to stop.
  bool run() { return extend(0); }

 private:
  bool feasible(VertexIndex pv, VertexIndex hv, std::size_t depth) const {
    if (used_[hv] || host_.label(hv) != p_.label(pv) || host_.degree(hv) < p_.degree(pv)) return false;
    for (std::size_t i = 0; i < depth; ++i) {
      const auto w = plan_.order[i];
      if (auto lbl = p_.edge_label(pv, w)) {
        auto hl = host_.edge_label(hv, image_[w]);
        if (!hl || *hl != *lbl) return false;
      }
    }
    return true;
  }

  bool try_vertex(VertexIndex pv, VertexIndex hv, std::size_t depth) {
    if (!feasible(pv, hv, depth)) return true;
    image_[pv] = hv;
    used_[hv] = true;
    const bool go_on = extend(depth + 1);
    used_[hv] = false;
    return go_on;
  }

  bool extend(std::size_t depth) {
    if (depth == plan_.order.size()) return cb_(image_);
    const auto pv = plan_.order[depth];
    if (const auto parent = plan_.parent[pv]) {
      for (const auto& [hv, _] : host_.neighbors(image_[*parent]))
        if (!try_vertex(pv, hv, depth)) return false;
    } else {
      for (VertexIndex hv = 0; hv < host_.vertex_count(); ++hv)
        if (!try_vertex(pv, hv, depth)) return false;
    }
    return true;
  }

  const LabeledGraph& p_;
  const LabeledGraph& host_;
  MatchPlan plan_;
  Callback cb_;
  std::vector<VertexIndex> image_;
  std::vector<bool> used_;
};

}  // namespace detail

// Calls fn(mapping) for every injective, label- and edge-preserving map of
// p's vertices into host (non-induced). fn returns false to stop early.
inline void for_each_embedding(const LabeledGraph& p, const LabeledGraph& host,
                               const std::function<bool(const std::vector<VertexIndex>&)>& fn) {
  if (p.vertex_count() > host.vertex_count() || p.edge_count() > host.edge_count()) return;
  detail::Matcher(p, host, fn).run();
}

// A witness mapping p-vertex -> host-vertex, or nullopt if p is not a
// subgraph of host.
inline std::optional<std::vector<VertexIndex>> subgraph_isomorphic(const LabeledGraph& p, const LabeledGraph& host) {
  std::optional<std::vector<VertexIndex>> result;
  for_each_embedding(p, host, [&](const std::vector<VertexIndex>& m) {
    result = m;
    return false;
  });
  return result;
}

inline bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         subgraph_isomorphic(a, b).has_value();
}

inline bool is_unique_labeled(const LabeledGraph& g) {
  auto labels = g.labels();
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [](const Edge& e) { return e.label == kDefaultEdgeLabel; });
}

// Edge of a unique-labelled graph, identified by its endpoint labels.
struct EdgeKey {
  SymbolId lo = 0;
  SymbolId hi = 0;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

using EdgeItemset = std::vector<EdgeKey>;

// Sorted set of endpoint-label pairs. For unique-labelled graphs subgraph
// inclusion is exactly inclusion of these sets.
inline EdgeItemset edge_itemize(const LabeledGraph& g) {
  if (!is_unique_labeled(g)) throw PreconditionError("edge_itemize: graph is not unique-labelled");
  if (g.edge_count() == 0) throw PreconditionError("edge_itemize: graph has no edges");
  EdgeItemset out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto a = g.label(e.u), b = g.label(e.v);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Graph with one vertex per label, built from an edge-label-pair set.
inline LabeledGraph graph_from_edge_keys(const EdgeItemset& keys) {
  std::vector<SymbolId> labels;
  for (const auto& k : keys) {
    labels.push_back(k.lo);
    labels.push_back(k.hi);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  LabeledGraph g;
  for (auto l : labels) g.add_vertex(l);
  auto index_of = [&](SymbolId l) {
    return static_cast<VertexIndex>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  for (const auto& k : keys) g.add_edge(index_of(k.lo), index_of(k.hi));
  return g;
}

// ---------------------------------------------------------------------------
// Canonical form.
//
// The code of a vertex ordering v_0..v_{n-1} is the concatenation of one block
// per position: (label, degree, adj(v_0,v_k), ..., adj(v_{k-1},v_k)) where adj
// is 0 for "no edge" and edge-label+1 otherwise. The canonical code is the
// lexicographically smallest such code over all orderings; two graphs are
// isomorphic iff their canonical codes are equal. Blocks have fixed length per
// position, so prefix comparison prunes the search.
// ---------------------------------------------------------------------------

using CanonicalCode = std::vector<std::uint32_t>;

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const LabeledGraph& g) : g_(g), n_(g.vertex_count()), used_(n_, false) {}

  std::pair<CanonicalCode, std::vector<VertexIndex>> run() {
    if (n_ == 0) return {};
    search(0);
    return {best_, best_order_};
  }

 private:
  std::uint32_t adj_code(VertexIndex a, VertexIndex b) const {
    auto l = g_.edge_label(a, b);
    return l ? *l + 1 : 0;
  }

  void block(VertexIndex v, std::vector<std::uint32_t>& out) const {
    out.clear();
    out.push_back(g_.label(v));
    out.push_back(static_cast<std::uint32_t>(g_.degree(v)));
    for (auto w : order_) out.push_back(adj_code(w, v));
  }

  // Prefix of the current ordering compared with the same-length prefix of
  // the best complete code found so far.
  bool prefix_exceeds_best() const {
    if (best_.empty()) return false;
    return std::lexicographical_compare(best_.begin(), best_.begin() + static_cast<std::ptrdiff_t>(code_.size()),
                                         code_.begin(), code_.end());
  }

  void search(std::size_t pos) {
    if (pos == n_) {
      if (best_.empty() || code_ < best_) {
        best_ = code_;
        best_order_ = order_;
      }
      return;
    }
    // Labels and degrees lead each block, so only the minimal (label, degree)
    // among unused vertices can start the minimal continuation.
    std::optional<std::pair<SymbolId, std::size_t>> key;
    for (VertexIndex v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      std::pair<SymbolId, std::size_t> k{g_.label(v), g_.degree(v)};
      if (!key || k < *key) key = k;
    }
    std::vector<std::uint32_t> blk;
    for (VertexIndex v = 0; v < n_; ++v) {
      if (used_[v] || std::pair<SymbolId, std::size_t>{g_.label(v), g_.degree(v)} != *key) continue;
      block(v, blk);
      used_[v] = true;
      order_.push_back(v);
      code_.insert(code_.end(), blk.begin(), blk.end());
      if (!prefix_exceeds_best()) search(pos + 1);
      code_.resize(code_.size() - blk.size());
      order_.pop_back();
      used_[v] = false;
    }
  }

  const LabeledGraph& g_;
  std::size_t n_;
  std::vector<bool> used_;
  std::vector<VertexIndex> order_;
  CanonicalCode code_;
  CanonicalCode best_;
  std::vector<VertexIndex> best_order_;
};

}  // namespace detail

inline CanonicalCode canonical_code(const LabeledGraph& g) { return detail::Canonicalizer(g).run().first; }

// g with vertices renumbered into canonical order; isomorphic inputs give
// identical outputs.
inline LabeledGraph canonical_form(const LabeledGraph& g) {
  auto [code, order] = detail::Canonicalizer(g).run();
  std::vector<VertexIndex> position(g.vertex_count());
  LabeledGraph out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    position[order[i]] = static_cast<VertexIndex>(i);
    out.add_vertex(g.label(order[i]));
  }
  for (const auto& e : g.edges()) out.add_edge(position[e.u], position[e.v], e.label);
  return out;
}

}  // namespace cpm
