#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

// Local-constraint atoms. Symbols are kept as labels and resolved against the
// pattern set's symbol table at evaluation time; a label absent from the
// table matches nothing.
struct SizeMin { std::size_t k; };
struct SizeMax { std::size_t k; };
struct SupportMin { std::size_t k; };
struct SupportMax { std::size_t k; };
struct CostMax { std::uint64_t budget; };
struct Contains { std::string symbol; };
struct Excludes { std::string symbol; };
struct Adjacent { std::string first, second; };
struct Before { std::string first, second; };
struct NoneBetween {
  std::vector<std::string> blockers;
  std::string first, second;
};

using ConstraintAtom =
    std::variant<SizeMin, SizeMax, SupportMin, SupportMax, CostMax, Contains, Excludes, Adjacent, Before, NoneBetween>;

using Clause = std::vector<ConstraintAtom>;  // disjunction

// Conjunction of clauses; no clauses means every pattern is valid.
struct ConstraintExpr {
  std::vector<Clause> clauses;

  bool empty() const noexcept { return clauses.empty(); }
  bool uses_cost() const {
    for (const auto& c : clauses)
      for (const auto& a : c)
        if (std::holds_alternative<CostMax>(a)) return true;
    return false;
  }
  bool uses_sequence_atoms() const {
    for (const auto& c : clauses)
      for (const auto& a : c)
        if (std::holds_alternative<Adjacent>(a) || std::holds_alternative<Before>(a) ||
            std::holds_alternative<NoneBetween>(a))
          return true;
    return false;
  }

  friend ConstraintExpr operator&&(ConstraintExpr a, const ConstraintExpr& b) {
    a.clauses.insert(a.clauses.end(), b.clauses.begin(), b.clauses.end());
    return a;
  }
};

// Per-symbol nonnegative cost, keyed by label. Labels missing from the table
// cost 0.
using WeightTable = std::unordered_map<std::string, std::uint64_t>;

// ---------------------------------------------------------------------------
// Parsing. One clause per line (or per top-level comma), atoms separated by
// '|', '#' starts a comment.
// ---------------------------------------------------------------------------

namespace detail {

class ConstraintParser {
 public:
  explicit ConstraintParser(std::string_view text) : text_(text) {}

  ConstraintExpr parse() {
    ConstraintExpr expr;
    while (!at_end()) {
      Clause clause;
      skip_blank();
      if (at_end()) break;
      if (at_clause_end()) {
        advance_clause_end();
        continue;
      }
      for (;;) {
        clause.push_back(atom());
        skip_blank();
        if (!at_end() && peek() == '|') {
          advance();
          continue;
        }
        if (at_end() || at_clause_end()) break;
        fail("expected '|', ',' or end of line");
      }
      expr.clauses.push_back(std::move(clause));
      if (!at_end()) advance_clause_end();
    }
    return expr;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  // Spaces, tabs and comments; never newlines.
  void skip_blank() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool at_clause_end() const { return peek() == '\n' || peek() == ','; }
  void advance_clause_end() { advance(); }

  [[noreturn]] void fail(const std::string& what) const { throw InputError(what, line_, col_); }

  static bool token_char(char c) {
    return c != ' ' && c != '\t' && c != '\r' && c != '\n' && c != '|' && c != ',' && c != '#' && c != '{' &&
           c != '}';
  }

  std::string token(const char* what) {
    skip_blank();
    const auto start = pos_;
    while (!at_end() && token_char(peek())) advance();
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    const auto l = line_, c = col_;
    auto t = token("a nonnegative integer");
    std::uint64_t v = 0;
    for (char ch : t) {
      if (ch < '0' || ch > '9') throw InputError("expected a nonnegative integer, got '" + t + "'", l, c);
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
  }

  std::string comparison() {
    skip_blank();
    if (text_.substr(pos_, 2) == ">=" || text_.substr(pos_, 2) == "<=") {
      std::string op(text_.substr(pos_, 2));
      advance();
      advance();
      return op;
    }
    fail("expected '>=' or '<='");
  }

  std::vector<std::string> symbol_set() {
    skip_blank();
    if (at_end() || peek() != '{') fail("expected '{'");
    advance();
    std::vector<std::string> out;
    skip_blank();
    if (!at_end() && peek() == '}') {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(token("a symbol"));
      skip_blank();
      if (at_end()) fail("unterminated symbol set");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}') {
        advance();
        return out;
      }
      fail("expected ',' or '}'");
    }
  }

  ConstraintAtom atom() {
    skip_blank();
    const auto l = line_, c = col_;
    const auto name = token("a constraint");
    if (name == "size" || name == "support") {
      const auto op = comparison();
      const auto k = static_cast<std::size_t>(number());
      if (name == "size") return op == ">=" ? ConstraintAtom{SizeMin{k}} : ConstraintAtom{SizeMax{k}};
      return op == ">=" ? ConstraintAtom{SupportMin{k}} : ConstraintAtom{SupportMax{k}};
    }
    if (name == "cost") {
      if (comparison() != "<=") throw InputError("cost only supports '<='", l, c);
      return CostMax{number()};
    }
    if (name == "contains") return Contains{token("a symbol")};
    if (name == "excludes") return Excludes{token("a symbol")};
    if (name == "adjacent") {
      auto a = token("a symbol");
      return Adjacent{a, token("a symbol")};
    }
    if (name == "before") {
      auto a = token("a symbol");
      return Before{a, token("a symbol")};
    }
    if (name == "none_between") {
      auto blockers = symbol_set();
      auto a = token("a symbol");
      return NoneBetween{std::move(blockers), a, token("a symbol")};
    }
    throw InputError("unknown constraint '" + name + "'", l, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline ConstraintExpr parse_constraints(std::string_view text) { return detail::ConstraintParser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<SymbolId> pattern_symbols(const PatternRecord& rec) {
  switch (rec.kind) {
    case PatternKind::itemset: return rec.itemset().items();
    case PatternKind::sequence: return rec.sequence().symbols;
    default: return rec.graph().labels();
  }
}

inline const Sequence& require_sequence(const PatternRecord& rec, const char* atom) {
  if (rec.kind != PatternKind::sequence)
    throw KindMismatch(std::string(atom) + " applies to sequences only, got " + to_string(rec.kind));
  return rec.sequence();
}

// Positions p < q with s_p = x, s_q = y and no blocker strictly between.
// Scanning left to right, the latest x seen since the last blocker is the
// best left endpoint for any later y.
inline bool ordered_pair(const std::vector<SymbolId>& s, std::optional<SymbolId> x, std::optional<SymbolId> y,
                         const std::vector<SymbolId>& blockers) {
  if (!x || !y) return false;
  bool open = false;
  for (auto sym : s) {
    if (open && sym == *y) return true;
    if (sym == *x) {
      open = true;
    } else if (std::find(blockers.begin(), blockers.end(), sym) != blockers.end()) {
      open = false;
    }
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const SymbolTable& symbols, const WeightTable* weights) : symbols_(symbols), weights_(weights) {}

  bool operator()(const PatternRecord& rec, const ConstraintAtom& atom) const {
    return std::visit([&](const auto& a) { return eval(rec, a); }, atom);
  }

 private:
  std::optional<SymbolId> id(const std::string& label) const { return symbols_.find(label); }

  bool eval(const PatternRecord& r, const SizeMin& a) const { return r.size >= a.k; }
  bool eval(const PatternRecord& r, const SizeMax& a) const { return r.size <= a.k; }
  bool eval(const PatternRecord& r, const SupportMin& a) const { return r.support >= a.k; }
  bool eval(const PatternRecord& r, const SupportMax& a) const { return r.support <= a.k; }

  bool eval(const PatternRecord& r, const CostMax& a) const {
    if (!weights_) throw PreconditionError("cost constraint requires a weight table");
    std::uint64_t total = 0;
    // Itemsets count each item once, sequences every position, graphs every vertex.
    for (auto s : pattern_symbols(r)) {
      auto it = weights_->find(symbols_.label(s));
      if (it != weights_->end()) total += it->second;
      if (total > a.budget) return false;
    }
    return true;
  }

  bool eval(const PatternRecord& r, const Contains& a) const {
    auto s = id(a.symbol);
    if (!s) return false;
    auto syms = pattern_symbols(r);
    return std::find(syms.begin(), syms.end(), *s) != syms.end();
  }

  bool eval(const PatternRecord& r, const Excludes& a) const { return !eval(r, Contains{a.symbol}); }

  bool eval(const PatternRecord& r, const Adjacent& a) const {
    const auto& s = require_sequence(r, "adjacent").symbols;
    auto x = id(a.first), y = id(a.second);
    if (!x || !y) return false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == *x && s[i + 1] == *y) return true;
    return false;
  }

  bool eval(const PatternRecord& r, const Before& a) const {
    return ordered_pair(require_sequence(r, "before").symbols, id(a.first), id(a.second), {});
  }

  bool eval(const PatternRecord& r, const NoneBetween& a) const {
    const auto& s = require_sequence(r, "none_between").symbols;
    std::vector<SymbolId> blockers;
    for (const auto& b : a.blockers)
      if (auto bid = id(b)) blockers.push_back(*bid);
    return ordered_pair(s, id(a.first), id(a.second), blockers);
  }

  const SymbolTable& symbols_;
  const WeightTable* weights_;
};

}  // namespace detail

// True iff every clause has a satisfied atom.
inline bool evaluate(const PatternRecord& rec, const ConstraintExpr& expr, const SymbolTable& symbols,
                     const WeightTable* weights = nullptr) {
  if (expr.uses_cost() && !weights) throw PreconditionError("cost constraint requires a weight table");
  if (rec.kind != PatternKind::sequence && expr.uses_sequence_atoms())
    throw KindMismatch(std::string("ordering constraints apply to sequences only, got ") + to_string(rec.kind));
  const detail::Evaluator eval(symbols, weights);
  for (const auto& clause : expr.clauses) {
    bool any = false;
    for (const auto& atom : clause) {
      if (eval(rec, atom)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

struct Partition {
  std::vector<PatternRecord> valid;
  std::vector<PatternRecord> invalid;
};

// Order-preserving split of records by evaluate().
inline Partition partition_valid(const std::vector<PatternRecord>& records, const ConstraintExpr& expr,
                                 const SymbolTable& symbols, const WeightTable* weights = nullptr) {
  Partition out;
  for (const auto& r : records) (evaluate(r, expr, symbols, weights) ? out.valid : out.invalid).push_back(r);
  return out;
}

}  // namespace cpm
