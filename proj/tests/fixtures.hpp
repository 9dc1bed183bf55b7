#pragma once

// Small worked datasets shared by the unit and acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "cpm/cpm.hpp"

namespace cpm::fixtures {

// Transactions: {a,b,d,e}, {b,c,e}, {a,e}.
inline constexpr const char* kTable1 = "a b d e\nb c e\na e\n";

// Sequences: <a b c d a e b>, <b c e b>, <a a e>.
inline constexpr const char* kTable2 = "a b c d a e b\nb c e b\na a e\n";

// Unique-labelled G1, G2 and the repeated-label G3.
inline constexpr const char* kFigure1 =
    "t # 1\n"
    "v 1 a\nv 2 b\nv 3 c\nv 4 d\nv 5 e\n"
    "e 1 2\ne 1 3\ne 1 4\ne 3 5\n"
    "t # 2\n"
    "v 1 a\nv 2 b\nv 3 c\nv 4 f\nv 5 e\n"
    "e 1 2\ne 1 3\ne 1 4\ne 3 5\ne 2 4\n"
    "t # 3\n"
    "v 1 a\nv 2 b\nv 3 c\nv 4 f\nv 5 a\n"
    "e 1 2\ne 1 3\ne 1 4\ne 4 5\ne 2 4\n";

// G'1 (path e-c-a-b) and G'2 (triangle a-b-f).
inline constexpr const char* kFigure2 =
    "t # 1\n"
    "v 1 a\nv 2 b\nv 3 c\nv 5 e\n"
    "e 1 2\ne 1 3\ne 3 5\n"
    "t # 2\n"
    "v 1 a\nv 2 b\nv 4 f\n"
    "e 1 2\ne 1 4\ne 2 4\n";

inline constexpr const char* kExample10Matrix = "1 1 0\n1 0 1\n0 1 1\n";

// The three highlighted approximate tiles (0-based rows, cols).
inline std::vector<Tile> example10_tiles(const BinaryMatrix& m) {
  return {make_tile(m, {0, 1}, {0, 1, 2}, 0), make_tile(m, {1, 2}, {0, 1}, 1), make_tile(m, {1, 2}, {1, 2}, 2)};
}

// Moving-habits sequences S1..S3 and their local constraint.
inline constexpr const char* kMovingSequences = "bG mA ba mG ma\nbA mG ba mA ma\nbUS mA ba mUS ma\n";
inline constexpr const char* kMovingConstraints =
    "# no US-born\n"
    "excludes bUS\n"
    "# moved to Germany straight before masters, or German-born with no move abroad before masters\n"
    "adjacent mG ma | none_between {mA,mUS} bG ma\n";

inline TransactionDB table1() { return io::parse_transactions(kTable1); }
inline SequenceDB table2() { return io::parse_sequences(kTable2); }

// G1, G2, G3, G'1, G'2 over one vertex-label table.
struct GraphFixture {
  GraphDB db;  // G1, G2, G3
  LabeledGraph g1, g2, g3, sub1, sub2;
};

inline GraphFixture figure_graphs() {
  GraphFixture f;
  f.db = io::parse_graphs(std::string(kFigure1) + kFigure2);
  f.g1 = f.db.graphs[0];
  f.g2 = f.db.graphs[1];
  f.g3 = f.db.graphs[2];
  f.sub1 = f.db.graphs[3];
  f.sub2 = f.db.graphs[4];
  f.db.graphs.resize(3);
  return f;
}

inline Itemset items(const TransactionDB& db, std::initializer_list<const char*> labels) {
  std::vector<SymbolId> ids;
  for (auto l : labels) ids.push_back(db.symbols.at(l));
  return Itemset(ids);
}

inline Sequence seq(const SymbolTable& symbols, std::initializer_list<const char*> labels) {
  Sequence s;
  for (auto l : labels) s.symbols.push_back(symbols.at(l));
  return s;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline TransactionDB random_transactions(std::mt19937& rng, std::size_t n_items, std::size_t n_tx, double density) {
  std::bernoulli_distribution bit(density);
  TransactionDB db;
  for (std::size_t i = 0; i < n_items; ++i) db.symbols.intern("i" + std::to_string(i));
  for (std::size_t t = 0; t < n_tx; ++t) {
    std::vector<SymbolId> row;
    for (SymbolId i = 0; i < n_items; ++i)
      if (bit(rng)) row.push_back(i);
    if (row.empty()) row.push_back(static_cast<SymbolId>(std::uniform_int_distribution<std::size_t>(0, n_items - 1)(rng)));
    db.transactions.emplace_back(std::move(row));
  }
  return db;
}

inline SequenceDB random_sequences(std::mt19937& rng, std::size_t alphabet, std::size_t n_seq, std::size_t max_len) {
  SequenceDB db;
  for (std::size_t i = 0; i < alphabet; ++i) db.symbols.intern(std::string(1, static_cast<char>('a' + i)));
  std::uniform_int_distribution<std::size_t> len(1, max_len), sym(0, alphabet - 1);
  for (std::size_t s = 0; s < n_seq; ++s) {
    Sequence q;
    const auto l = len(rng);
    for (std::size_t i = 0; i < l; ++i) q.symbols.push_back(static_cast<SymbolId>(sym(rng)));
    db.sequences.push_back(std::move(q));
  }
  return db;
}

inline LabeledGraph random_graph(std::mt19937& rng, std::size_t max_vertices, std::size_t n_labels,
                                 std::size_t n_edge_labels, double density) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vertices), lab(0, n_labels - 1), elab(0, n_edge_labels - 1);
  std::bernoulli_distribution edge(density);
  LabeledGraph g;
  const auto n = nv(rng);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(static_cast<SymbolId>(lab(rng)));
  // Random spanning tree keeps the graph connected, then extra edges.
  for (VertexIndex v = 1; v < n; ++v) {
    const auto u = static_cast<VertexIndex>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    g.add_edge(u, v, static_cast<SymbolId>(elab(rng)));
  }
  for (VertexIndex u = 0; u < n; ++u)
    for (VertexIndex v = u + 1; v < n; ++v)
      if (!g.edge_label(u, v) && edge(rng)) g.add_edge(u, v, static_cast<SymbolId>(elab(rng)));
  return g;
}

inline GraphDB random_graph_db(std::mt19937& rng, std::size_t n_graphs, std::size_t max_vertices, std::size_t n_labels,
                               std::size_t n_edge_labels, double density) {
  GraphDB db;
  for (std::size_t i = 0; i < n_labels; ++i) db.vertex_labels.intern(std::string(1, static_cast<char>('a' + i)));
  for (std::size_t i = 1; i < n_edge_labels; ++i) db.edge_labels.intern("x" + std::to_string(i));
  for (std::size_t i = 0; i < n_graphs; ++i)
    db.graphs.push_back(random_graph(rng, max_vertices, n_labels, n_edge_labels, density));
  return db;
}

inline BinaryMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BinaryMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, bit(rng));
  return m;
}

inline std::vector<Tile> random_tiles(std::mt19937& rng, const BinaryMatrix& m, std::size_t count) {
  std::vector<Tile> out;
  std::bernoulli_distribution pick(0.5);
  while (out.size() < count) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (pick(rng)) rows.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (pick(rng)) cols.push_back(c);
    if (rows.empty() || cols.empty()) continue;
    out.push_back(make_tile(m, rows, cols, out.size()));
  }
  return out;
}

}  // namespace cpm::fixtures
