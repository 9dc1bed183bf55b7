#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

enum class DominanceRelation { maximal, closed, free, skyline };

inline const char* to_string(DominanceRelation r) {
  switch (r) {
    case DominanceRelation::maximal: return "maximal";
    case DominanceRelation::closed: return "closed";
    case DominanceRelation::free: return "free";
    case DominanceRelation::skyline: return "skyline";
  }
  return "?";
}

inline std::optional<DominanceRelation> parse_relation(std::string_view s) {
  if (s == "maximal") return DominanceRelation::maximal;
  if (s == "closed") return DominanceRelation::closed;
  if (s == "free") return DominanceRelation::free;
  if (s == "skyline") return DominanceRelation::skyline;
  return std::nullopt;
}

// p is a proper sub-pattern of q.
inline bool proper_subpattern(const PatternRecord& p, const PatternRecord& q) {
  if (p.kind != q.kind)
    throw KindMismatch(std::string("cannot compare ") + to_string(p.kind) + " with " + to_string(q.kind));
  switch (p.kind) {
    case PatternKind::itemset:
      return p.size < q.size && p.itemset().subset_of(q.itemset());
    case PatternKind::sequence:
      // Equal-length subsequences are equal sequences.
      return p.size < q.size && is_subsequence(p.sequence(), q.sequence());
    case PatternKind::graph_unique: {
      if (p.size >= q.size || p.size == 0) return false;
      const auto a = edge_itemize(p.graph()), b = edge_itemize(q.graph());
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }
    case PatternKind::graph: {
      const auto& a = p.graph();
      const auto& b = q.graph();
      if (a.edge_count() > b.edge_count() || a.vertex_count() > b.vertex_count()) return false;
      if (!subgraph_isomorphic(a, b)) return false;
      // Same shape both ways means isomorphic, not proper.
      return !(a.edge_count() == b.edge_count() && a.vertex_count() == b.vertex_count());
    }
  }
  return false;
}

// p <* q under rel.
inline bool dominates(const PatternRecord& p, const PatternRecord& q, DominanceRelation rel) {
  if (p.kind != q.kind)
    throw KindMismatch(std::string("cannot compare ") + to_string(p.kind) + " with " + to_string(q.kind));
  switch (rel) {
    case DominanceRelation::maximal:
      return proper_subpattern(p, q);
    case DominanceRelation::closed:
      return p.support == q.support && proper_subpattern(p, q);
    case DominanceRelation::free:
      return p.support == q.support && proper_subpattern(q, p);
    case DominanceRelation::skyline:
      return (p.support <= q.support && p.size < q.size) || (p.support < q.support && p.size <= q.size);
  }
  return false;
}

// The valid, non-dominated records of `valid`, in input order. Callers apply
// local constraints first; dominators are only drawn from `valid`.
inline std::vector<PatternRecord> condense(const std::vector<PatternRecord>& valid, DominanceRelation rel) {
  std::vector<PatternRecord> out;
  if (valid.empty()) return out;
  const auto kind = valid.front().kind;
  for (const auto& r : valid)
    if (r.kind != kind) throw KindMismatch("condense: mixed pattern kinds");

  std::vector<bool> keep(valid.size(), true);

  if (rel == DominanceRelation::skyline) {
    // Pareto frontier over (support up, size up). Sweep sizes from largest to
    // smallest; a record survives iff no strictly larger record has support
    // >= its own and no same-size record has strictly greater support.
    std::vector<std::size_t> idx(valid.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return valid[a].size > valid[b].size; });
    std::optional<std::size_t> best_larger;  // max support among strictly larger sizes
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      std::size_t best_here = 0;
      while (j < idx.size() && valid[idx[j]].size == valid[idx[i]].size) {
        best_here = std::max(best_here, valid[idx[j]].support);
        ++j;
      }
      for (std::size_t k = i; k < j; ++k) {
        const auto s = valid[idx[k]].support;
        if ((best_larger && *best_larger >= s) || best_here > s) keep[idx[k]] = false;
      }
      best_larger = best_larger ? std::max(*best_larger, best_here) : best_here;
      i = j;
    }
  } else {
    // Inclusion-based relations: only candidates with a compatible size (and,
    // for closed/free, equal support) can dominate.
    std::map<std::size_t, std::vector<std::size_t>> by_support;
    for (std::size_t i = 0; i < valid.size(); ++i) by_support[valid[i].support].push_back(i);
    for (std::size_t i = 0; i < valid.size(); ++i) {
      const auto& p = valid[i];
      auto dominated_by = [&](std::size_t j) {
        const auto& q = valid[j];
        if (rel == DominanceRelation::free ? q.size >= p.size : q.size <= p.size) return false;
        return dominates(p, q, rel);
      };
      if (rel == DominanceRelation::maximal) {
        for (std::size_t j = 0; j < valid.size() && keep[i]; ++j)
          if (dominated_by(j)) keep[i] = false;
      } else {
        for (auto j : by_support[p.support])
          if (dominated_by(j)) {
            keep[i] = false;
            break;
          }
      }
    }
  }

  for (std::size_t i = 0; i < valid.size(); ++i)
    if (keep[i]) out.push_back(valid[i]);
  return out;
}

inline constexpr std::size_t kDefaultOracleBound = 5000;

// Literal double loop over every ordered pair; reference for condense().
inline std::vector<PatternRecord> brute_force_condense(const std::vector<PatternRecord>& valid, DominanceRelation rel,
                                                       std::size_t bound = kDefaultOracleBound) {
  if (valid.size() > bound)
    throw BoundExceeded("brute_force_condense: " + std::to_string(valid.size()) + " patterns exceed bound " +
                        std::to_string(bound));
  std::vector<PatternRecord> out;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < valid.size(); ++j)
      if (j != i && dominates(valid[i], valid[j], rel)) dominated = true;
    if (!dominated) out.push_back(valid[i]);
  }
  return out;
}

}  // namespace cpm
