#pragma once

// Command-line front end. Kept header-only so the test suite can drive it
// in-process through run().

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpm/cpm.hpp"
#include "cpm/oracle.hpp"

namespace cpm::cli {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kParse = 3 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

struct MineArgs {
  std::string type;
  std::string input;
  std::string minsup;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> max_edges;
  std::string out;
  unsigned threads = 1;
};

struct CondenseArgs {
  std::string patterns;
  std::string rep;
  std::string constraints;
  std::string weights;
  std::string out;
};

struct TileArgs {
  std::string matrix;
  std::size_t threshold = 0;
  double tau = 0.5;
  std::size_t max_candidates = 20;
  std::string method = "greedy";
  std::string error_mode = "coverable";
  std::string candidates;
  std::size_t bound = kDefaultExactBound;
  std::string out;
};

struct VerifyArgs {
  std::string type;
  std::string input;
  std::string minsup;
  std::string rep;
  std::string constraints;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> max_edges;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline PatternKind kind_arg(const std::string& s) {
  auto k = parse_kind(s);
  if (!k) throw UsageError("unknown pattern type '" + s + "'");
  return *k;
}

inline DominanceRelation relation_arg(const std::string& s) {
  auto r = parse_relation(s);
  if (!r) throw UsageError("unknown representation '" + s + "'");
  return *r;
}

inline MinSupport minsup_arg(const std::string& s) {
  try {
    return MinSupport::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--minsup: ") + e.what());
  }
}

// A constraint argument is a file if one exists at that path, otherwise
// the formula itself.
inline ConstraintExpr constraints_arg(const std::string& s) {
  if (s.empty()) return {};
  std::error_code ec;
  if (std::filesystem::is_regular_file(s, ec)) return parse_constraints(io::read_file(s));
  return parse_constraints(s);
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

// Everything mined for one input, with the tables needed to print it.
struct Mined {
  io::PatternSet set;
  std::size_t sigma = 0;
  std::size_t db_size = 0;
};

inline Mined mine(PatternKind kind, const std::string& input, const MinSupport& minsup,
                  std::optional<std::size_t> max_len, std::optional<std::size_t> max_edges, unsigned threads) {
  Mined m;
  m.set.kind = kind;
  const MinerOptions opts{threads};
  switch (kind) {
    case PatternKind::itemset: {
      const auto db = io::load_transactions(input);
      m.set.symbols = db.symbols;
      m.set.records = mine_frequent_itemsets(db, minsup, opts);
      m.db_size = db.size();
      break;
    }
    case PatternKind::sequence: {
      const auto db = io::load_sequences(input);
      m.set.symbols = db.symbols;
      m.set.records = mine_frequent_sequences(db, minsup, max_len, opts);
      m.db_size = db.size();
      break;
    }
    case PatternKind::graph_unique: {
      const auto db = io::load_graphs(input);
      m.set.symbols = db.vertex_labels;
      m.set.edge_labels = db.edge_labels;
      m.set.records = mine_frequent_graphs_unique(db, minsup, opts);
      m.db_size = db.size();
      break;
    }
    case PatternKind::graph: {
      const auto db = io::load_graphs(input);
      m.set.symbols = db.vertex_labels;
      m.set.edge_labels = db.edge_labels;
      m.set.records = mine_frequent_graphs_general(db, minsup, max_edges);
      m.db_size = db.size();
      break;
    }
  }
  m.sigma = minsup.effective(m.db_size);
  return m;
}

inline int cmd_mine(const MineArgs& a, Streams io_) {
  const auto kind = kind_arg(a.type);
  if (a.max_len && kind != PatternKind::sequence) throw UsageError("--max-len applies to --type sequence");
  if (a.max_edges && kind != PatternKind::graph) throw UsageError("--max-edges applies to --type graph");
  const auto m = mine(kind, a.input, minsup_arg(a.minsup), a.max_len, a.max_edges, a.threads);
  emit(a.out, io::format_patterns(m.set), io_.out);
  auto& log = a.out.empty() || a.out == "-" ? io_.err : io_.out;
  log << "mined " << m.set.records.size() << " " << to_string(kind) << " patterns from " << m.db_size
      << " records at minsup " << m.sigma << "\n";
  return kOk;
}

struct Condensed {
  std::vector<PatternRecord> valid;
  std::vector<PatternRecord> condensed;
};

// Local constraints strictly before the dominance relation.
inline Condensed condense_pipeline(const std::vector<PatternRecord>& records, const ConstraintExpr& expr,
                                   const SymbolTable& symbols, const WeightTable* weights, DominanceRelation rel) {
  Condensed c;
  c.valid = partition_valid(records, expr, symbols, weights).valid;
  c.condensed = condense(c.valid, rel);
  return c;
}

inline int cmd_condense(const CondenseArgs& a, Streams io_) {
  const auto rel = relation_arg(a.rep);
  auto set = io::read_patterns(a.patterns);
  const auto expr = constraints_arg(a.constraints);
  std::optional<WeightTable> weights;
  if (!a.weights.empty()) weights = io::load_weights(a.weights);
  if (expr.uses_cost() && !weights) throw UsageError("cost constraints need --weights");
  const auto c = condense_pipeline(set.records, expr, set.symbols, weights ? &*weights : nullptr, rel);

  io::PatternSet out;
  out.kind = set.kind;
  out.symbols = set.symbols;
  out.edge_labels = set.edge_labels;
  out.records = c.condensed;
  out.flags.assign(out.records.size(), io::PatternFlags{true, true});
  emit(a.out, io::format_patterns(out), io_.out);
  auto& log = a.out.empty() || a.out == "-" ? io_.err : io_.out;
  log << set.records.size() << " patterns, " << c.valid.size() << " valid, " << c.condensed.size() << " "
      << to_string(rel) << "\n";
  return kOk;
}

inline int cmd_tile(const TileArgs& a, Streams io_) {
  const auto mode = parse_error_mode(a.error_mode);
  if (!mode) throw UsageError("unknown --error-mode '" + a.error_mode + "'");
  std::optional<ExactMode> exact;
  if (a.method == "first") exact = ExactMode::first;
  else if (a.method == "all") exact = ExactMode::all;
  else if (a.method == "optimal") exact = ExactMode::optimal;
  else if (a.method != "greedy") throw UsageError("unknown --method '" + a.method + "'");

  const auto matrix = io::load_matrix(a.matrix);
  auto candidates = a.candidates.empty() ? generate_candidates(matrix, a.tau, a.max_candidates)
                                         : io::parse_candidates(io::read_file(a.candidates), matrix);
  const TilingProblem problem(matrix, std::move(candidates));
  io::TilingReport report{a.method, a.threshold, *mode, {}, problem.candidates()};
  report.result = exact ? exact_select(problem, a.threshold, *exact, *mode, a.bound)
                        : greedy_select(problem, a.threshold, *mode);
  const auto text = io::format_tiling(report);
  io_.out << text;
  if (!a.out.empty() && a.out != "-") io::write_file(a.out, text);
  return report.result.ok() ? kOk : kNegative;
}

inline int cmd_verify(const VerifyArgs& a, Streams io_) {
  const auto kind = kind_arg(a.type);
  const auto rel = relation_arg(a.rep);
  const auto minsup = minsup_arg(a.minsup);
  const auto expr = constraints_arg(a.constraints);
  if (expr.uses_cost()) throw UsageError("verify does not take cost constraints");

  // Enumerate first so oversized inputs fail before the miner runs.
  std::vector<PatternRecord> enumerated;
  switch (kind) {
    case PatternKind::itemset:
      enumerated = oracle::frequent_itemsets(io::load_transactions(a.input), minsup);
      break;
    case PatternKind::sequence:
      enumerated = oracle::frequent_sequences(io::load_sequences(a.input), minsup, a.max_len);
      break;
    case PatternKind::graph_unique:
      enumerated = oracle::frequent_graphs_unique(io::load_graphs(a.input), minsup);
      break;
    case PatternKind::graph:
      enumerated = oracle::frequent_graphs(io::load_graphs(a.input), minsup, a.max_edges);
      break;
  }

  const auto m = mine(kind, a.input, minsup, a.max_len, a.max_edges, 1);
  if (auto diff = oracle::compare_patterns(m.set.records, enumerated)) {
    io_.out << "frequent patterns differ: " << *diff << "\n";
    return kNegative;
  }
  const auto fast = condense_pipeline(m.set.records, expr, m.set.symbols, nullptr, rel);
  const auto valid = partition_valid(enumerated, expr, m.set.symbols).valid;
  const auto slow = brute_force_condense(valid, rel);
  if (auto diff = oracle::compare_patterns(fast.condensed, slow)) {
    io_.out << "condensed patterns differ: " << *diff << "\n";
    return kNegative;
  }
  io_.out << "ok: " << m.set.records.size() << " frequent, " << fast.valid.size() << " valid, "
          << fast.condensed.size() << " " << to_string(rel) << "\n";
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams s) {
  CLI::App app{"Frequent, constrained and condensed pattern mining; approximate tiling."};
  app.require_subcommand(1);

  detail::MineArgs mine;
  auto* m = app.add_subcommand("mine", "mine all frequent patterns");
  m->add_option("--type", mine.type, "itemset | sequence | graph-unique | graph")->required();
  m->add_option("--input", mine.input, "dataset file")->required();
  m->add_option("--minsup", mine.minsup, "integer count or fraction in (0,1]")->required();
  m->add_option("--max-len", mine.max_len, "longest sequence pattern")->check(CLI::PositiveNumber);
  m->add_option("--max-edges", mine.max_edges, "largest graph pattern")->check(CLI::PositiveNumber);
  m->add_option("--out", mine.out, "pattern file (default stdout)");
  m->add_option("--threads", mine.threads, "worker threads")->check(CLI::PositiveNumber);

  detail::CondenseArgs cond;
  auto* c = app.add_subcommand("condense", "filter by local constraints, then keep non-dominated patterns");
  c->add_option("--patterns", cond.patterns, "pattern file from mine")->required();
  c->add_option("--rep", cond.rep, "maximal | closed | free | skyline")->required();
  c->add_option("--constraints", cond.constraints, "constraint file or inline formula");
  c->add_option("--weights", cond.weights, "weight table for cost constraints");
  c->add_option("--out", cond.out, "pattern file (default stdout)");

  detail::TileArgs tile;
  auto* t = app.add_subcommand("tile", "select approximate tiles under an error budget");
  t->add_option("--matrix", tile.matrix, "0/1 matrix file")->required();
  t->add_option("--threshold", tile.threshold, "error budget")->required();
  t->add_option("--tau", tile.tau, "confidence threshold for candidates");
  t->add_option("--max-candidates", tile.max_candidates, "candidate limit");
  t->add_option("--method", tile.method, "greedy | first | all | optimal");
  t->add_option("--error-mode", tile.error_mode, "full | coverable");
  t->add_option("--candidates", tile.candidates, "candidate file instead of generated ones");
  t->add_option("--bound", tile.bound, "largest candidate count for exact search");
  t->add_option("--out", tile.out, "report file");

  detail::VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "compare the pipeline with exhaustive enumeration");
  v->add_option("--input", ver.input, "dataset file")->required();
  v->add_option("--type", ver.type, "itemset | sequence | graph-unique | graph")->required();
  v->add_option("--minsup", ver.minsup, "integer count or fraction in (0,1]")->required();
  v->add_option("--rep", ver.rep, "maximal | closed | free | skyline")->required();
  v->add_option("--constraints", ver.constraints, "constraint file or inline formula");
  v->add_option("--max-len", ver.max_len)->check(CLI::PositiveNumber);
  v->add_option("--max-edges", ver.max_edges)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, s.out, s.err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (m->parsed()) return detail::cmd_mine(mine, s);
    if (c->parsed()) return detail::cmd_condense(cond, s);
    if (t->parsed()) return detail::cmd_tile(tile, s);
    return detail::cmd_verify(ver, s);
  } catch (const InputError& e) {
    s.err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const BoundExceeded& e) {
    s.err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

inline int run(const std::vector<std::string>& args, Streams s) {
  std::vector<const char*> argv{"cpm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), s);
}

}  // namespace cpm::cli
