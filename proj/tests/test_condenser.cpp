#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cpm/oracle.hpp"
#include "fixtures.hpp"

namespace cpm {
namespace {

using fixtures::items;

constexpr DominanceRelation kAll[] = {DominanceRelation::maximal, DominanceRelation::closed, DominanceRelation::free,
                                      DominanceRelation::skyline};

std::set<std::string> names(const std::vector<PatternRecord>& recs, const SymbolTable& t) {
  std::set<std::string> out;
  for (const auto& r : recs) {
    std::string s;
    for (auto i : r.itemset().items()) s += t.label(i);
    out.insert(s);
  }
  return out;
}

const PatternRecord& find(const std::vector<PatternRecord>& recs, const Itemset& is) {
  for (const auto& r : recs)
    if (r.itemset() == is) return r;
  throw std::runtime_error("missing record");
}

TEST(Dominates, TableOneExamples) {
  const auto db = fixtures::table1();
  const auto recs = mine_frequent_itemsets(db, MinSupport::absolute(2));
  const auto& e = find(recs, items(db, {"e"}));
  const auto& a = find(recs, items(db, {"a"}));
  const auto& ae = find(recs, items(db, {"a", "e"}));
  EXPECT_TRUE(dominates(e, ae, DominanceRelation::maximal));
  EXPECT_FALSE(dominates(ae, ae, DominanceRelation::maximal));
  EXPECT_TRUE(dominates(a, ae, DominanceRelation::closed));
  EXPECT_FALSE(dominates(e, ae, DominanceRelation::closed));
  EXPECT_TRUE(dominates(ae, a, DominanceRelation::free));
  EXPECT_TRUE(dominates(a, ae, DominanceRelation::skyline));
  EXPECT_FALSE(dominates(e, ae, DominanceRelation::skyline));
}

TEST(Dominates, MixedKindsRejected) {
  const auto db = fixtures::table1();
  const auto i = make_record(PatternKind::itemset, items(db, {"a"}), {1});
  const auto s = make_record(PatternKind::sequence, Sequence{{0}}, {1});
  EXPECT_THROW(dominates(i, s, DominanceRelation::maximal), KindMismatch);
  EXPECT_THROW(condense({i, s}, DominanceRelation::closed), KindMismatch);
}

TEST(Condense, TableOne) {
  const auto db = fixtures::table1();
  const auto recs = mine_frequent_itemsets(db, MinSupport::absolute(2));
  using S = std::set<std::string>;
  EXPECT_EQ(names(condense(recs, DominanceRelation::maximal), db.symbols), (S{"ae", "be"}));
  EXPECT_EQ(names(condense(recs, DominanceRelation::closed), db.symbols), (S{"e", "ae", "be"}));
  EXPECT_EQ(names(condense(recs, DominanceRelation::skyline), db.symbols), (S{"e", "ae", "be"}));
  EXPECT_EQ(names(condense(recs, DominanceRelation::free), db.symbols), (S{"a", "b", "e"}));
}

TEST(Condense, TableOneUnderSizeAndSupport) {
  const auto db = fixtures::table1();
  const auto recs = mine_frequent_itemsets(db, MinSupport::absolute(2));
  const auto valid = partition_valid(recs, parse_constraints("size >= 2\nsupport >= 2"), db.symbols).valid;
  EXPECT_EQ(names(condense(valid, DominanceRelation::maximal), db.symbols), (std::set<std::string>{"ae", "be"}));
}

TEST(Condense, EmptyAndSingleton) {
  for (auto rel : kAll) {
    EXPECT_TRUE(condense({}, rel).empty());
    const auto one = make_record(PatternKind::itemset, Itemset{0}, {1});
    EXPECT_EQ(condense({one}, rel).size(), 1u);
    EXPECT_EQ(brute_force_condense({one}, rel).size(), 1u);
  }
}

TEST(BruteForceCondense, BoundEnforced) {
  std::vector<PatternRecord> recs(4, make_record(PatternKind::itemset, Itemset{0}, {1}));
  EXPECT_THROW(brute_force_condense(recs, DominanceRelation::maximal, 3), BoundExceeded);
}

// Random valid sets drawn from mined patterns of each kind.
std::vector<PatternRecord> sample(std::mt19937& rng, const std::vector<PatternRecord>& all, std::size_t k) {
  std::vector<PatternRecord> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
  return out;
}

void expect_same(const std::vector<PatternRecord>& a, const std::vector<PatternRecord>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].pid, b[i].pid);
}

TEST(Condense, MatchesBruteForceItemsets) {
  std::mt19937 rng(61);
  for (int round = 0; round < 40; ++round) {
    const auto db = fixtures::random_transactions(rng, 6, 8, 0.5);
    const auto all = mine_frequent_itemsets(db, MinSupport::absolute(1));
    const auto valid = sample(rng, all, 15);
    for (auto rel : kAll) expect_same(condense(valid, rel), brute_force_condense(valid, rel));
  }
}

TEST(Condense, MatchesBruteForceSequences) {
  std::mt19937 rng(62);
  for (int round = 0; round < 40; ++round) {
    const auto db = fixtures::random_sequences(rng, 3, 4, 6);
    const auto all = mine_frequent_sequences(db, MinSupport::absolute(1));
    const auto valid = sample(rng, all, 15);
    for (auto rel : kAll) expect_same(condense(valid, rel), brute_force_condense(valid, rel));
  }
}

TEST(Condense, MatchesBruteForceGraphs) {
  std::mt19937 rng(63);
  for (int round = 0; round < 20; ++round) {
    const auto db = fixtures::random_graph_db(rng, 3, 5, 2, 1, 0.3);
    const auto all = mine_frequent_graphs_general(db, MinSupport::absolute(1), 4);
    const auto valid = sample(rng, all, 15);
    for (auto rel : kAll) expect_same(condense(valid, rel), brute_force_condense(valid, rel));
  }
}

TEST(Condense, UniqueLabelledMaximalOverFirstTwoGraphs) {
  const auto f = fixtures::figure_graphs();
  GraphDB db = f.db;
  db.graphs.resize(2);
  const auto out = condense(mine_frequent_graphs_unique(db, MinSupport::absolute(2)), DominanceRelation::maximal);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(isomorphic(out[0].graph(), f.sub1));
}

TEST(Condense, SequenceDominanceUsesFullEmbedding) {
  const auto db = io::parse_sequences("a b a\nb a b\n");
  const auto aba = make_record(PatternKind::sequence, db.sequences[0], {1});
  const auto bab = make_record(PatternKind::sequence, db.sequences[1], {2});
  const auto ab = make_record(PatternKind::sequence, Sequence{{0, 1}}, {1, 2});
  EXPECT_FALSE(dominates(aba, bab, DominanceRelation::maximal));
  EXPECT_TRUE(dominates(ab, aba, DominanceRelation::maximal));
  EXPECT_TRUE(dominates(ab, bab, DominanceRelation::maximal));
}

TEST(Condense, GraphProperInclusionIsStrict) {
  // Two 2-edge paths with different centre labels: neither contains the other.
  const auto db = io::parse_graphs("t # 1\nv 0 a\nv 1 b\nv 2 a\ne 0 1\ne 1 2\nt # 2\nv 0 b\nv 1 a\nv 2 b\ne 0 1\ne 1 2\n");
  const auto p = make_record(PatternKind::graph, db.graphs[0], {1});
  const auto q = make_record(PatternKind::graph, db.graphs[1], {2});
  EXPECT_FALSE(dominates(p, q, DominanceRelation::maximal));
  EXPECT_FALSE(dominates(q, p, DominanceRelation::maximal));
  EXPECT_FALSE(dominates(p, p, DominanceRelation::maximal));
}

TEST(CondenseProperties, OutputIsUndominatedSubset) {
  std::mt19937 rng(64);
  for (int round = 0; round < 30; ++round) {
    const auto db = fixtures::random_transactions(rng, 7, 10, 0.5);
    const auto all = mine_frequent_itemsets(db, MinSupport::absolute(2));
    for (auto rel : kAll) {
      const auto out = condense(all, rel);
      for (const auto& p : out) {
        EXPECT_TRUE(std::any_of(all.begin(), all.end(), [&](const auto& r) { return r.pid == p.pid; }));
        for (const auto& q : all) EXPECT_FALSE(dominates(p, q, rel));
      }
    }
  }
}

TEST(CondenseProperties, MaximalWithinClosed) {
  std::mt19937 rng(65);
  for (int round = 0; round < 30; ++round) {
    const auto db = fixtures::random_transactions(rng, 8, 12, 0.45);
    const auto all = mine_frequent_itemsets(db, MinSupport::absolute(2));
    std::set<std::size_t> closed;
    for (const auto& r : condense(all, DominanceRelation::closed)) closed.insert(r.pid);
    for (const auto& r : condense(all, DominanceRelation::maximal)) EXPECT_TRUE(closed.count(r.pid));
  }
}

TEST(CondenseProperties, ClosedSupportsReconstructAll) {
  std::mt19937 rng(66);
  for (int round = 0; round < 30; ++round) {
    const auto db = fixtures::random_transactions(rng, 8, 12, 0.45);
    const auto all = mine_frequent_itemsets(db, MinSupport::absolute(2));
    const auto closed = condense(all, DominanceRelation::closed);
    for (const auto& p : all) {
      std::size_t best = 0;
      for (const auto& q : closed)
        if (p.itemset().subset_of(q.itemset())) best = std::max(best, q.support);
      EXPECT_EQ(best, p.support);
    }
  }
}

TEST(CondenseProperties, SkylineIsAntichain) {
  std::mt19937 rng(67);
  for (int round = 0; round < 30; ++round) {
    const auto db = fixtures::random_sequences(rng, 4, 6, 7);
    const auto out = condense(mine_frequent_sequences(db, MinSupport::absolute(1), 5), DominanceRelation::skyline);
    for (const auto& p : out)
      for (const auto& q : out) EXPECT_FALSE(dominates(p, q, DominanceRelation::skyline));
  }
}

TEST(CondenseProperties, LocalBeforeGlobal) {
  // Every item together is frequent, so unconstrained maximal is {abcd};
  // with size <= 2 the maximal valid patterns are the six pairs.
  const auto db = io::parse_transactions("a b c d\na b c d\na b c\n");
  const auto all = mine_frequent_itemsets(db, MinSupport::absolute(2));
  EXPECT_EQ(names(condense(all, DominanceRelation::maximal), db.symbols), (std::set<std::string>{"abcd"}));
  const auto valid = partition_valid(all, parse_constraints("size <= 2"), db.symbols).valid;
  const auto out = condense(valid, DominanceRelation::maximal);
  EXPECT_EQ(names(out, db.symbols), (std::set<std::string>{"ab", "ac", "ad", "bc", "bd", "cd"}));
  expect_same(out, brute_force_condense(valid, DominanceRelation::maximal));
  // Filtering after condensing would lose everything.
  EXPECT_TRUE(partition_valid(condense(all, DominanceRelation::maximal), parse_constraints("size <= 2"), db.symbols)
                  .valid.empty());
}

}  // namespace
}  // namespace cpm
