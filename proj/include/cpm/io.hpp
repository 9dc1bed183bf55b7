#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cpm/constraints.hpp"
#include "cpm/errors.hpp"
#include "cpm/graph.hpp"
#include "cpm/pattern.hpp"
#include "cpm/tiler.hpp"

namespace cpm::io {

// ---------------------------------------------------------------------------
// Text helpers
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// Lines without terminators; a trailing newline does not add an empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <class Int>
inline Int parse_int(std::string_view s, std::size_t line, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  return v;
}

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

// One transaction per line, whitespace-separated tokens, repeats collapsed.
inline TransactionDB parse_transactions(std::string_view text) {
  TransactionDB db;
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty transaction file");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tokens = split_ws(lines[i]);
    if (tokens.empty()) throw InputError("blank line", i + 1);
    std::vector<SymbolId> items;
    for (auto t : tokens) items.push_back(db.symbols.intern(t));
    db.transactions.emplace_back(std::move(items));
  }
  return db;
}

// One sequence per line; order and repeats preserved.
inline SequenceDB parse_sequences(std::string_view text) {
  SequenceDB db;
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty sequence file");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tokens = split_ws(lines[i]);
    if (tokens.empty()) throw InputError("blank line", i + 1);
    Sequence s;
    for (auto t : tokens) s.symbols.push_back(db.symbols.intern(t));
    db.sequences.push_back(std::move(s));
  }
  return db;
}

// gSpan-style records:
//   t # <gid>
//   v <vid> <label>
//   e <u> <v> [<edge label>]     (edge label defaults to 0)
inline GraphDB parse_graphs(std::string_view text) {
  GraphDB db;
  std::map<long long, VertexIndex> vertex_of;
  LabeledGraph* current = nullptr;
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty graph file");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line_no = i + 1;
    auto tok = split_ws(lines[i]);
    if (tok.empty()) throw InputError("blank line", line_no);
    if (tok[0] == "t") {
      if (tok.size() != 3 || tok[1] != "#") throw InputError("expected 't # <gid>'", line_no);
      parse_int<long long>(tok[2], line_no, "graph id");
      db.graphs.emplace_back();
      current = &db.graphs.back();
      vertex_of.clear();
    } else if (tok[0] == "v") {
      if (!current) throw InputError("vertex before any 't' record", line_no);
      if (tok.size() != 3) throw InputError("expected 'v <vid> <label>'", line_no);
      const auto vid = parse_int<long long>(tok[1], line_no, "vertex id");
      if (vertex_of.count(vid)) throw InputError("duplicate vertex id " + std::string(tok[1]), line_no);
      vertex_of[vid] = current->add_vertex(db.vertex_labels.intern(tok[2]));
    } else if (tok[0] == "e") {
      if (!current) throw InputError("edge before any 't' record", line_no);
      if (tok.size() != 3 && tok.size() != 4) throw InputError("expected 'e <u> <v> [<label>]'", line_no);
      const auto u = parse_int<long long>(tok[1], line_no, "vertex id");
      const auto v = parse_int<long long>(tok[2], line_no, "vertex id");
      auto iu = vertex_of.find(u), iv = vertex_of.find(v);
      if (iu == vertex_of.end() || iv == vertex_of.end()) throw InputError("edge references undeclared vertex", line_no);
      if (u == v) throw InputError("self-loop on vertex " + std::string(tok[1]), line_no);
      const auto label = tok.size() == 4 ? db.edge_labels.intern(tok[3]) : kDefaultEdgeLabel;
      if (current->edge_label(iu->second, iv->second)) throw InputError("duplicate edge", line_no);
      current->add_edge(iu->second, iv->second, label);
    } else {
      throw InputError("unknown record type '" + std::string(tok[0]) + "'", line_no);
    }
  }
  if (db.graphs.empty()) throw InputError("no graph records");
  return db;
}

// Rows of space-separated 0/1 cells, equal length.
inline BinaryMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<int>> rows;
  const auto lines = split_lines(text);
  if (lines.empty()) throw InputError("empty matrix file");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = split_ws(lines[i]);
    if (tok.empty()) throw InputError("blank line", i + 1);
    std::vector<int> row;
    for (std::size_t j = 0; j < tok.size(); ++j) {
      if (tok[j] != "0" && tok[j] != "1")
        throw InputError("non-binary cell '" + std::string(tok[j]) + "'", i + 1, j + 1);
      row.push_back(tok[j] == "1");
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError("ragged row: expected " + std::to_string(rows.front().size()) + " cells, got " +
                           std::to_string(row.size()),
                       i + 1);
    rows.push_back(std::move(row));
  }
  return BinaryMatrix::from_rows(rows);
}

// `SYM WEIGHT` per line, weight a nonnegative integer.
inline WeightTable parse_weights(std::string_view text) {
  WeightTable table;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = split_ws(lines[i]);
    if (tok.empty()) throw InputError("blank line", i + 1);
    if (tok.size() != 2) throw InputError("expected 'SYM WEIGHT'", i + 1);
    if (!tok[1].empty() && tok[1].front() == '-') throw InputError("negative weight", i + 1);
    const auto w = parse_int<std::uint64_t>(tok[1], i + 1, "weight");
    if (!table.emplace(std::string(tok[0]), w).second)
      throw InputError("duplicate weight for '" + std::string(tok[0]) + "'", i + 1);
  }
  return table;
}

inline TransactionDB load_transactions(const std::filesystem::path& p) { return parse_transactions(read_file(p)); }
inline SequenceDB load_sequences(const std::filesystem::path& p) { return parse_sequences(read_file(p)); }
inline GraphDB load_graphs(const std::filesystem::path& p) { return parse_graphs(read_file(p)); }
inline BinaryMatrix load_matrix(const std::filesystem::path& p) { return parse_matrix(read_file(p)); }
inline WeightTable load_weights(const std::filesystem::path& p) { return parse_weights(read_file(p)); }

// ---------------------------------------------------------------------------
// Pattern files
//
//   pid=<n> kind=<kind> support=<n> size=<n> cover=<t,t,...|-> flags=<-|valid|condensed|valid,condensed> elements: <tokens>
//
// Elements: itemset / sequence - the symbol labels in order; graph and
// graph-unique - `v <label>` per vertex (numbered from 0) then
// `e <u> <v> <edge label>` per edge.
// ---------------------------------------------------------------------------

struct PatternFlags {
  bool valid = false;
  bool condensed = false;
  friend bool operator==(const PatternFlags&, const PatternFlags&) = default;
};

struct PatternOutput {
  std::size_t pid = 0;
  PatternKind kind = PatternKind::itemset;
  std::size_t support = 0;
  std::size_t size = 0;
  std::optional<TidSet> cover;
  PatternFlags flags;
  std::vector<std::string> elements;

  friend bool operator==(const PatternOutput&, const PatternOutput&) = default;
};

inline PatternOutput to_output(const PatternRecord& r, const SymbolTable& symbols, const SymbolTable* edge_labels,
                               PatternFlags flags = {}) {
  PatternOutput o{r.pid, r.kind, r.support, r.size, r.cover, flags, {}};
  switch (r.kind) {
    case PatternKind::itemset:
      for (auto s : r.itemset().items()) o.elements.push_back(symbols.label(s));
      break;
    case PatternKind::sequence:
      for (auto s : r.sequence().symbols) o.elements.push_back(symbols.label(s));
      break;
    default: {
      const auto& g = r.graph();
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        o.elements.emplace_back("v");
        o.elements.push_back(symbols.label(g.label(v)));
      }
      for (const auto& e : g.edges()) {
        o.elements.emplace_back("e");
        o.elements.push_back(std::to_string(e.u));
        o.elements.push_back(std::to_string(e.v));
        o.elements.push_back(edge_labels ? edge_labels->label(e.label) : std::to_string(e.label));
      }
    }
  }
  return o;
}

inline std::string format_pattern_line(const PatternOutput& o) {
  std::string s = "pid=" + std::to_string(o.pid) + " kind=" + to_string(o.kind) +
                  " support=" + std::to_string(o.support) + " size=" + std::to_string(o.size) + " cover=";
  if (!o.cover) {
    s += '-';
  } else {
    for (std::size_t i = 0; i < o.cover->size(); ++i) s += (i ? "," : "") + std::to_string((*o.cover)[i]);
  }
  s += " flags=";
  if (o.flags.valid && o.flags.condensed) s += "valid,condensed";
  else if (o.flags.valid) s += "valid";
  else if (o.flags.condensed) s += "condensed";
  else s += '-';
  s += " elements:";
  for (const auto& e : o.elements) s += ' ' + e;
  return s;
}

inline PatternOutput parse_pattern_line(std::string_view line, std::size_t line_no) {
  auto tok = split_ws(line);
  const char* const keys[] = {"pid", "kind", "support", "size", "cover", "flags"};
  if (tok.size() < 7) throw InputError("truncated pattern record", line_no);
  std::string_view val[6];
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string prefix = std::string(keys[i]) + "=";
    if (tok[i].substr(0, prefix.size()) != prefix) throw InputError("expected field '" + prefix + "'", line_no, i + 1);
    val[i] = tok[i].substr(prefix.size());
  }
  if (tok[6] != "elements:") throw InputError("expected 'elements:'", line_no);

  PatternOutput o;
  o.pid = parse_int<std::size_t>(val[0], line_no, "pid");
  auto kind = parse_kind(val[1]);
  if (!kind) throw InputError("unknown kind '" + std::string(val[1]) + "'", line_no);
  o.kind = *kind;
  o.support = parse_int<std::size_t>(val[2], line_no, "support");
  o.size = parse_int<std::size_t>(val[3], line_no, "size");
  if (val[4] != "-") {
    TidSet cover;
    if (!val[4].empty())
      for (auto t : split_on(val[4], ',')) cover.push_back(parse_int<Tid>(t, line_no, "cover id"));
    o.cover = std::move(cover);
  }
  if (val[5] != "-") {
    for (auto f : split_on(val[5], ',')) {
      if (f == "valid") o.flags.valid = true;
      else if (f == "condensed") o.flags.condensed = true;
      else throw InputError("unknown flag '" + std::string(f) + "'", line_no);
    }
  }
  for (std::size_t i = 7; i < tok.size(); ++i) o.elements.emplace_back(tok[i]);
  return o;
}

// Patterns of one kind with their own interned symbol tables.
struct PatternSet {
  PatternKind kind = PatternKind::itemset;
  SymbolTable symbols;
  SymbolTable edge_labels;
  std::vector<PatternRecord> records;
  std::vector<PatternFlags> flags;  // parallel to records

  PatternSet() { edge_labels.intern("0"); }
};

inline PatternRecord to_record(const PatternOutput& o, PatternSet& set, std::size_t line_no) {
  PatternValue value;
  switch (o.kind) {
    case PatternKind::itemset: {
      if (o.elements.empty()) throw InputError("itemset without items", line_no);
      std::vector<SymbolId> ids;
      for (const auto& e : o.elements) ids.push_back(set.symbols.intern(e));
      Itemset is(ids);
      if (is.size() != ids.size()) throw InputError("repeated item in itemset", line_no);
      value = std::move(is);
      break;
    }
    case PatternKind::sequence: {
      if (o.elements.empty()) throw InputError("sequence without symbols", line_no);
      Sequence s;
      for (const auto& e : o.elements) s.symbols.push_back(set.symbols.intern(e));
      value = std::move(s);
      break;
    }
    default: {
      LabeledGraph g;
      std::size_t i = 0;
      try {
        while (i < o.elements.size()) {
          if (o.elements[i] == "v" && i + 1 < o.elements.size()) {
            g.add_vertex(set.symbols.intern(o.elements[i + 1]));
            i += 2;
          } else if (o.elements[i] == "e" && i + 3 < o.elements.size()) {
            const auto u = parse_int<VertexIndex>(o.elements[i + 1], line_no, "vertex index");
            const auto v = parse_int<VertexIndex>(o.elements[i + 2], line_no, "vertex index");
            g.add_edge(u, v, set.edge_labels.intern(o.elements[i + 3]));
            i += 4;
          } else {
            throw InputError("malformed graph elements", line_no);
          }
        }
      } catch (const PreconditionError& e) {
        throw InputError(e.what(), line_no);
      }
      value = std::move(g);
    }
  }
  PatternRecord r;
  r.pid = o.pid;
  r.kind = o.kind;
  r.size = pattern_size(value);
  if (r.size != o.size) throw InputError("size field does not match elements", line_no);
  r.pattern = std::move(value);
  r.support = o.support;
  if (o.cover) {
    if (o.cover->size() != o.support) throw InputError("support does not match cover", line_no);
    r.cover = *o.cover;
  }
  return r;
}

inline std::string format_patterns(const std::vector<PatternOutput>& outputs) {
  std::string s;
  for (const auto& o : outputs) s += format_pattern_line(o) + '\n';
  return s;
}

inline std::string format_patterns(const PatternSet& set) {
  std::string s;
  for (std::size_t i = 0; i < set.records.size(); ++i)
    s += format_pattern_line(to_output(set.records[i], set.symbols, &set.edge_labels,
                                       i < set.flags.size() ? set.flags[i] : PatternFlags{})) +
         '\n';
  return s;
}

inline std::vector<PatternOutput> parse_pattern_outputs(std::string_view text) {
  std::vector<PatternOutput> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(parse_pattern_line(lines[i], i + 1));
  return out;
}

// Symbols are interned in first-appearance order. An empty text gives an
// empty set.
inline PatternSet parse_patterns(std::string_view text) {
  PatternSet set;
  const auto outputs = parse_pattern_outputs(text);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i == 0) set.kind = outputs[i].kind;
    else if (outputs[i].kind != set.kind) throw InputError("mixed pattern kinds in one file", i + 1);
    set.records.push_back(to_record(outputs[i], set, i + 1));
    set.flags.push_back(outputs[i].flags);
  }
  return set;
}

inline void write_patterns(const PatternSet& set, const std::filesystem::path& path) {
  write_file(path, format_patterns(set));
}

inline PatternSet read_patterns(const std::filesystem::path& path) { return parse_patterns(read_file(path)); }

// ---------------------------------------------------------------------------
// Tilings. Tile ids, rows and columns are written 1-based.
//
//   status=<ok|unsatisfiable> method=<m> n=<candidates> threshold=<t> error_mode=<mode> solutions=<count>
//   selection k=<k> error=<e> ones_outside=<o> zeros_inside=<z> uncoverable=<u> tiles=<id,...|->
//   candidate id=<id> rows=<r,...> cols=<c,...> ones=<count>
// ---------------------------------------------------------------------------

struct TilingReport {
  std::string method;
  std::size_t threshold = 0;
  ErrorMode mode = ErrorMode::coverable;
  SelectionResult result;
  std::vector<Tile> candidates;
};

namespace detail {
inline std::string one_based(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}
}  // namespace detail

inline std::string format_tiling(const TilingReport& r) {
  std::string s = std::string("status=") + (r.result.ok() ? "ok" : "unsatisfiable") + " method=" + r.method +
                  " n=" + std::to_string(r.candidates.size()) + " threshold=" + std::to_string(r.threshold) +
                  " error_mode=" + (r.mode == ErrorMode::full ? "full" : "coverable") +
                  " solutions=" + std::to_string(r.result.ok() ? r.result.selections.size() : 0) + '\n';
  for (const auto& sel : r.result.selections)
    s += "selection k=" + std::to_string(sel.k()) + " error=" + std::to_string(sel.error) +
         " ones_outside=" + std::to_string(sel.terms.ones_outside) +
         " zeros_inside=" + std::to_string(sel.terms.zeros_inside) +
         " uncoverable=" + std::to_string(sel.terms.uncoverable) + " tiles=" + detail::one_based(sel.chosen) + '\n';
  for (const auto& t : r.candidates)
    s += "candidate id=" + std::to_string(t.id + 1) + " rows=" + detail::one_based(t.rows) +
         " cols=" + detail::one_based(t.cols) + " ones=" + std::to_string(t.ones.size()) + '\n';
  return s;
}

inline void write_tiling(const TilingReport& r, const std::filesystem::path& path) { write_file(path, format_tiling(r)); }

// Candidate rectangles, one per line: `rows=1,2 cols=1,2,3` (1-based).
inline std::vector<Tile> parse_candidates(std::string_view text, const BinaryMatrix& m) {
  std::vector<Tile> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = split_ws(lines[i]);
    if (tok.empty()) throw InputError("blank line", i + 1);
    if (tok.size() != 2 || tok[0].substr(0, 5) != "rows=" || tok[1].substr(0, 5) != "cols=")
      throw InputError("expected 'rows=<r,...> cols=<c,...>'", i + 1);
    auto indices = [&](std::string_view list, std::size_t limit) {
      std::vector<std::size_t> v;
      for (auto x : split_on(list, ',')) {
        const auto k = parse_int<std::size_t>(x, i + 1, "index");
        if (k == 0 || k > limit) throw InputError("index " + std::string(x) + " out of range", i + 1);
        v.push_back(k - 1);
      }
      return v;
    };
    out.push_back(make_tile(m, indices(tok[0].substr(5), m.rows()), indices(tok[1].substr(5), m.cols()), out.size()));
  }
  return out;
}

}  // namespace cpm::io
