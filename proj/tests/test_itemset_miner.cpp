#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cpm/oracle.hpp"
#include "fixtures.hpp"

namespace cpm {
namespace {

using fixtures::items;

std::set<std::vector<std::string>> labelled(const std::vector<PatternRecord>& recs, const SymbolTable& t) {
  std::set<std::vector<std::string>> out;
  for (const auto& r : recs) {
    std::vector<std::string> l;
    for (auto s : r.itemset().items()) l.push_back(t.label(s));
    std::sort(l.begin(), l.end());
    out.insert(l);
  }
  return out;
}

TEST(ItemsetMiner, TableOneAtTwo) {
  const auto db = fixtures::table1();
  const auto got = mine_frequent_itemsets(db, MinSupport::absolute(2));
  using V = std::vector<std::string>;
  EXPECT_EQ(labelled(got, db.symbols), (std::set<V>{{"a"}, {"b"}, {"e"}, {"a", "e"}, {"b", "e"}}));
  for (const auto& r : got) {
    if (r.itemset() == items(db, {"a", "e"})) {
      EXPECT_EQ(r.cover, (TidSet{1, 3}));
    }
    if (r.itemset() == items(db, {"b", "e"})) {
      EXPECT_EQ(r.cover, (TidSet{1, 2}));
    }
    EXPECT_EQ(r.support, r.cover.size());
  }
}

TEST(ItemsetMiner, ThresholdAboveDatabaseIsEmpty) {
  const auto db = fixtures::table1();
  EXPECT_TRUE(mine_frequent_itemsets(db, MinSupport::absolute(4)).empty());
}

TEST(ItemsetMiner, RelativeThreshold) {
  const auto db = fixtures::table1();
  // ceil(0.5 * 3) = 2
  EXPECT_EQ(mine_frequent_itemsets(db, MinSupport::relative(0.5)).size(), 5u);
  EXPECT_EQ(mine_frequent_itemsets(db, MinSupport::parse("1.0")).size(), 1u);
}

TEST(ItemsetMiner, EmptyDatabaseRejected) {
  TransactionDB db;
  EXPECT_THROW(mine_frequent_itemsets(db, MinSupport::absolute(1)), PreconditionError);
}

TEST(ItemsetMiner, ThresholdOneMatchesEnumeration) {
  const auto db = fixtures::table1();
  const auto got = mine_frequent_itemsets(db, MinSupport::absolute(1));
  const auto want = oracle::frequent_itemsets(db, MinSupport::absolute(1));
  EXPECT_EQ(oracle::compare_patterns(got, want), std::nullopt);
  // {a,b,d,e} has 15 nonempty subsets; {b,c,e} adds 4 with c; {a,e} adds none.
  EXPECT_EQ(got.size(), 19u);
}

TEST(ItemsetMiner, DownwardClosed) {
  std::mt19937 rng(21);
  for (int round = 0; round < 20; ++round) {
    const auto db = fixtures::random_transactions(rng, 10, 20, 0.4);
    const auto got = mine_frequent_itemsets(db, MinSupport::absolute(3));
    std::set<Itemset> all;
    for (const auto& r : got) all.insert(r.itemset());
    for (const auto& r : got) {
      const auto& v = r.itemset().items();
      if (v.size() < 2) continue;
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        auto w = v;
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(all.count(Itemset(w)));
      }
    }
  }
}

TEST(ItemsetMiner, MatchesEnumerationOnRandomData) {
  std::mt19937 rng(22);
  for (int round = 0; round < 60; ++round) {
    const auto n_items = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    const auto n_tx = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
    const auto db = fixtures::random_transactions(rng, n_items, n_tx, 0.5);
    const auto sigma = std::uniform_int_distribution<std::size_t>(1, n_tx)(rng);
    const auto got = mine_frequent_itemsets(db, MinSupport::absolute(sigma));
    const auto want = oracle::frequent_itemsets(db, MinSupport::absolute(sigma));
    ASSERT_EQ(oracle::compare_patterns(got, want), std::nullopt) << "round " << round;
  }
}

TEST(ItemsetMiner, ThreadCountDoesNotChangeOutput) {
  std::mt19937 rng(23);
  const auto db = fixtures::random_transactions(rng, 14, 40, 0.45);
  const auto one = mine_frequent_itemsets(db, MinSupport::absolute(4));
  for (unsigned t : {2u, 4u, 8u}) {
    const auto many = mine_frequent_itemsets(db, MinSupport::absolute(4), MinerOptions{t});
    ASSERT_EQ(many.size(), one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(many[i].pid, one[i].pid);
      EXPECT_EQ(many[i].pattern, one[i].pattern);
      EXPECT_EQ(many[i].cover, one[i].cover);
    }
  }
}

TEST(ItemsetMiner, PidsFollowCanonicalOrder) {
  const auto got = mine_frequent_itemsets(fixtures::table1(), MinSupport::absolute(1));
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].pid, i + 1);
    if (i) {
      EXPECT_TRUE(canonical_less(got[i - 1], got[i]));
    }
  }
}

}  // namespace
}  // namespace cpm
