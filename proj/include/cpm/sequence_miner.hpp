#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <optional>
#include <vector>

#include "cpm/itemset_miner.hpp"
#include "cpm/min_support.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

namespace detail {

// Pseudo-projection entry: sequence sid (1-based) whose remaining suffix
// starts at 0-based offset `start`, i.e. just after the leftmost embedding of
// the current prefix.
struct Projection {
  Tid sid;
  std::size_t start;
};

class PrefixSpan {
 public:
  PrefixSpan(const SequenceDB& db, std::size_t sigma, std::optional<std::size_t> max_len)
      : db_(db), sigma_(sigma), max_len_(max_len) {}

  // Frequent symbols with their projected databases, ascending by id.
  std::vector<std::pair<SymbolId, std::vector<Projection>>> extensions(const std::vector<Projection>& proj) const {
    std::vector<std::vector<Projection>> by_symbol(db_.symbols.size());
    for (const auto& p : proj) {
      const auto& seq = db_.sequences[p.sid - 1].symbols;
      // First occurrence of each symbol in the suffix.
      for (std::size_t i = p.start; i < seq.size(); ++i) {
        auto& bucket = by_symbol[seq[i]];
        if (bucket.empty() || bucket.back().sid != p.sid) bucket.push_back({p.sid, i + 1});
      }
    }
    std::vector<std::pair<SymbolId, std::vector<Projection>>> out;
    for (SymbolId s = 0; s < by_symbol.size(); ++s)
      if (by_symbol[s].size() >= sigma_) out.emplace_back(s, std::move(by_symbol[s]));
    return out;
  }

  void grow(std::vector<SymbolId>& prefix, const std::vector<Projection>& proj, std::vector<PatternRecord>& out) const {
    TidSet cover;
    cover.reserve(proj.size());
    for (const auto& p : proj) cover.push_back(p.sid);
    out.push_back(make_record(PatternKind::sequence, Sequence{prefix}, std::move(cover)));
    if (max_len_ && prefix.size() >= *max_len_) return;
    for (auto& [sym, next] : extensions(proj)) {
      prefix.push_back(sym);
      grow(prefix, next, out);
      prefix.pop_back();
    }
  }

 private:
  const SequenceDB& db_;
  std::size_t sigma_;
  std::optional<std::size_t> max_len_;
};

}  // namespace detail

// All sequences S (repeats allowed) with |{sid : S ⊑ seq_sid}| >= threshold
// and |S| <= max_len when given. Unbounded length can be exponential in the
// longest input sequence. Canonical order: length, then lexicographic ids.
inline std::vector<PatternRecord> mine_frequent_sequences(const SequenceDB& db, const MinSupport& minsup,
                                                          std::optional<std::size_t> max_len = std::nullopt,
                                                          const MinerOptions& opts = {}) {
  if (db.size() == 0) throw PreconditionError("mine_frequent_sequences: empty database");
  if (max_len && *max_len == 0) throw PreconditionError("mine_frequent_sequences: max_len must be positive");
  const auto sigma = minsup.effective(db.size());
  std::vector<PatternRecord> out;
  if (sigma > db.size()) return out;

  detail::PrefixSpan engine(db, sigma, max_len);
  std::vector<detail::Projection> all;
  for (std::size_t i = 0; i < db.size(); ++i) all.push_back({static_cast<Tid>(i + 1), 0});
  auto roots = engine.extensions(all);

  auto branch = [&](std::size_t i) {
    std::vector<PatternRecord> part;
    std::vector<SymbolId> prefix{roots[i].first};
    engine.grow(prefix, roots[i].second, part);
    return part;
  };

  std::vector<std::vector<PatternRecord>> parts(roots.size());
  if (opts.threads <= 1 || roots.size() < 2) {
    for (std::size_t i = 0; i < roots.size(); ++i) parts[i] = branch(i);
  } else {
    std::atomic<std::size_t> next_root{0};
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < opts.threads; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next_root.fetch_add(1)) < roots.size();) parts[i] = branch(i);
      }));
    for (auto& f : workers) f.get();
  }
  for (auto& part : parts)
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));

  std::sort(out.begin(), out.end(), canonical_less);
  assign_pids(out);
  return out;
}

}  // namespace cpm
