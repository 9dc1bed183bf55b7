#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <vector>

#include "cpm/min_support.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

struct MinerOptions {
  unsigned threads = 1;
};

namespace detail {

inline TidSet intersect(const TidSet& a, const TidSet& b) {
  TidSet out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct TidColumn {
  SymbolId item;
  TidSet tids;
};

// Depth-first Eclat over vertical tid-lists: every prefix node's extensions
// are the later siblings whose intersected tid-list stays frequent.
inline void eclat(std::vector<SymbolId>& prefix, const std::vector<TidColumn>& siblings, std::size_t sigma,
                  std::vector<PatternRecord>& out) {
  for (std::size_t i = 0; i < siblings.size(); ++i) {
    prefix.push_back(siblings[i].item);
    out.push_back(make_record(PatternKind::itemset, Itemset(prefix), siblings[i].tids));
    std::vector<TidColumn> next;
    for (std::size_t j = i + 1; j < siblings.size(); ++j) {
      auto tids = intersect(siblings[i].tids, siblings[j].tids);
      if (tids.size() >= sigma) next.push_back({siblings[j].item, std::move(tids)});
    }
    if (!next.empty()) eclat(prefix, next, sigma, out);
    prefix.pop_back();
  }
}

}  // namespace detail

// All nonempty itemsets with support >= the effective threshold, in canonical
// order (size, then lexicographic item ids) with pids 1..n.
inline std::vector<PatternRecord> mine_frequent_itemsets(const TransactionDB& db, const MinSupport& minsup,
                                                         const MinerOptions& opts = {}) {
  if (db.size() == 0) throw PreconditionError("mine_frequent_itemsets: empty database");
  const auto sigma = minsup.effective(db.size());
  std::vector<PatternRecord> out;
  if (sigma > db.size()) return out;

  std::vector<TidSet> vertical(db.symbols.size());
  for (std::size_t t = 0; t < db.transactions.size(); ++t)
    for (auto item : db.transactions[t].items()) vertical[item].push_back(static_cast<Tid>(t + 1));

  std::vector<detail::TidColumn> roots;
  for (SymbolId s = 0; s < vertical.size(); ++s)
    if (vertical[s].size() >= sigma) roots.push_back({s, std::move(vertical[s])});

  // Each root branch is independent; the suffix of siblings after it is the
  // only shared (read-only) input.
  auto branch = [&](std::size_t i) {
    std::vector<PatternRecord> part;
    std::vector<SymbolId> prefix;
    prefix.push_back(roots[i].item);
    part.push_back(make_record(PatternKind::itemset, Itemset(prefix), roots[i].tids));
    std::vector<detail::TidColumn> next;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      auto tids = detail::intersect(roots[i].tids, roots[j].tids);
      if (tids.size() >= sigma) next.push_back({roots[j].item, std::move(tids)});
    }
    if (!next.empty()) detail::eclat(prefix, next, sigma, part);
    return part;
  };

  if (opts.threads <= 1 || roots.size() < 2) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      auto part = branch(i);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  } else {
    std::vector<std::vector<PatternRecord>> parts(roots.size());
    std::atomic<std::size_t> next_root{0};
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < opts.threads; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next_root.fetch_add(1)) < roots.size();) parts[i] = branch(i);
      }));
    for (auto& f : workers) f.get();
    for (auto& part : parts)
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }

  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

}  // namespace cpm
