#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/symbol_table.hpp"

namespace cpm {

// 1-based transaction / sequence / graph identifier.
using Tid = std::uint32_t;
using TidSet = std::vector<Tid>;  // sorted, duplicate-free

// Nonempty, strictly increasing list of symbol ids.
class Itemset {
 public:
  Itemset() = default;

  // Sorts and deduplicates.
  explicit Itemset(std::vector<SymbolId> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }
  Itemset(std::initializer_list<SymbolId> items) : Itemset(std::vector<SymbolId>(items)) {}

  const std::vector<SymbolId>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(SymbolId s) const { return std::binary_search(items_.begin(), items_.end(), s); }

  // this ⊆ other
  bool subset_of(const Itemset& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  friend auto operator<=>(const Itemset&, const Itemset&) = default;

 private:
  std::vector<SymbolId> items_;
};

struct Sequence {
  std::vector<SymbolId> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  friend auto operator<=>(const Sequence&, const Sequence&) = default;
};

// Strictly increasing 1-based positions into a host sequence.
struct Embedding {
  std::vector<std::size_t> positions;
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct TransactionDB {
  SymbolTable symbols;
  std::vector<Itemset> transactions;  // tid = index + 1

  std::size_t size() const noexcept { return transactions.size(); }
};

struct SequenceDB {
  SymbolTable symbols;
  std::vector<Sequence> sequences;  // sid = index + 1

  std::size_t size() const noexcept { return sequences.size(); }
};

struct GraphDB {
  SymbolTable vertex_labels;
  SymbolTable edge_labels;  // id 0 is the default label "0"
  std::vector<LabeledGraph> graphs;  // gid = index + 1

  GraphDB() { edge_labels.intern("0"); }
  std::size_t size() const noexcept { return graphs.size(); }
};

enum class PatternKind { itemset, sequence, graph_unique, graph };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::itemset: return "itemset";
    case PatternKind::sequence: return "sequence";
    case PatternKind::graph_unique: return "graph-unique";
    case PatternKind::graph: return "graph";
  }
  return "?";
}

inline std::optional<PatternKind> parse_kind(std::string_view s) {
  if (s == "itemset") return PatternKind::itemset;
  if (s == "sequence") return PatternKind::sequence;
  if (s == "graph-unique") return PatternKind::graph_unique;
  if (s == "graph") return PatternKind::graph;
  return std::nullopt;
}

using PatternValue = std::variant<Itemset, Sequence, LabeledGraph>;

struct PatternRecord {
  std::size_t pid = 0;
  PatternKind kind = PatternKind::itemset;
  PatternValue pattern;
  std::size_t support = 0;
  TidSet cover;
  std::size_t size = 0;  // items / sequence length / edges

  const Itemset& itemset() const { return std::get<Itemset>(pattern); }
  const Sequence& sequence() const { return std::get<Sequence>(pattern); }
  const LabeledGraph& graph() const { return std::get<LabeledGraph>(pattern); }
};

inline std::size_t pattern_size(const PatternValue& v) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LabeledGraph>)
          return p.edge_count();
        else
          return p.size();
      },
      v);
}

inline PatternRecord make_record(PatternKind kind, PatternValue value, TidSet cover) {
  PatternRecord r;
  r.kind = kind;
  r.size = pattern_size(value);
  r.pattern = std::move(value);
  r.support = cover.size();
  r.cover = std::move(cover);
  return r;
}

// ---------------------------------------------------------------------------

// Transactions (1-based) containing every item of p.
inline TidSet cover_itemset(const TransactionDB& db, const Itemset& p) {
  if (p.empty()) throw PreconditionError("cover_itemset: empty itemset");
  for (auto s : p.items())
    if (!db.symbols.contains(s)) throw InputError("cover_itemset: unknown symbol id " + std::to_string(s));
  TidSet out;
  for (std::size_t i = 0; i < db.transactions.size(); ++i)
    if (p.subset_of(db.transactions[i])) out.push_back(static_cast<Tid>(i + 1));
  return out;
}

// Leftmost-greedy embedding of p into host (1-based positions), or nullopt.
inline std::optional<Embedding> find_embedding(std::span<const SymbolId> p, std::span<const SymbolId> host) {
  Embedding e;
  e.positions.reserve(p.size());
  std::size_t j = 0;
  for (auto s : p) {
    while (j < host.size() && host[j] != s) ++j;
    if (j == host.size()) return std::nullopt;
    e.positions.push_back(++j);
  }
  return e;
}

inline std::optional<Embedding> find_embedding(const Sequence& p, const Sequence& host) {
  return find_embedding(std::span<const SymbolId>(p.symbols), std::span<const SymbolId>(host.symbols));
}

inline bool is_subsequence(const Sequence& p, const Sequence& host) { return find_embedding(p, host).has_value(); }

inline TidSet cover_sequence(const SequenceDB& db, const Sequence& p) {
  TidSet out;
  for (std::size_t i = 0; i < db.sequences.size(); ++i)
    if (is_subsequence(p, db.sequences[i])) out.push_back(static_cast<Tid>(i + 1));
  return out;
}

inline TidSet cover_graph(const GraphDB& db, const LabeledGraph& p) {
  TidSet out;
  for (std::size_t i = 0; i < db.graphs.size(); ++i)
    if (subgraph_isomorphic(p, db.graphs[i])) out.push_back(static_cast<Tid>(i + 1));
  return out;
}

// Canonical record order: size, then the pattern's own ordering.
inline bool canonical_less(const PatternRecord& a, const PatternRecord& b) {
  if (a.size != b.size) return a.size < b.size;
  return a.pattern < b.pattern;
}

inline void assign_pids(std::vector<PatternRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) records[i].pid = i + 1;
}

}  // namespace cpm
