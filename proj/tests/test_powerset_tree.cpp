#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "emt/powerset_tree.hpp"
#include "oracles.hpp"

using emt::powerset_tree;
using emt::subset;
using oracle::S;

namespace {

constexpr std::uint64_t a = 1, b = 2, c = 4, d = 8;

std::vector<subset> keys_of(const std::vector<std::pair<subset, double>>& items) {
  std::vector<subset> out;
  for (const auto& [k, v] : items) out.push_back(k);
  return oracle::sorted(out);
}

powerset_tree<> store(std::size_t n, const std::vector<std::uint64_t>& words) {
  powerset_tree<> t(n);
  for (std::size_t i = 0; i < words.size(); ++i) t.insert(S(words[i]), static_cast<double>(i + 1));
  return t;
}

}  // namespace

TEST(PowersetTree, FourSetStoreHasOneDisjunction) {
  auto t = store(3, {a, c, b | c, a | b | c});
  EXPECT_EQ(t.value_node_count(), 4u);
  EXPECT_EQ(t.disjunction_count(), 1u);
  EXPECT_EQ(t.node_count(), 5u);
  EXPECT_TRUE(t.check_invariants());
  EXPECT_EQ(t.lookup(S(b | c)), 3.0);
  EXPECT_FALSE(t.lookup(S(b)).has_value());
}

TEST(PowersetTree, ChainNeedsNoDisjunction) {
  auto t = store(6, {1, 3, 7, 15, 31, 63});
  EXPECT_EQ(t.node_count(), 6u);
  EXPECT_EQ(t.disjunction_count(), 0u);
  auto shuffled = store(6, {63, 7, 1, 31, 3, 15});
  EXPECT_EQ(shuffled.node_count(), 6u);
  EXPECT_TRUE(shuffled.check_invariants());
}

TEST(PowersetTree, ThreeWayBranchAtOneStateExceedsHalfExtraNodes) {
  // {c},{a,c},{b,c},{a,b,c}: the four keys share depth 3 and differ on bits 0
  // and 1, so two disjunctions sit below a third one.
  auto t = store(3, {c, a | c, b | c, a | b | c});
  EXPECT_EQ(t.value_node_count(), 4u);
  EXPECT_EQ(t.disjunction_count(), 3u);
  EXPECT_TRUE(t.check_invariants());
}

TEST(PowersetTree, OverwriteKeepsCount) {
  powerset_tree<> t(3);
  t.insert(S(a | c), 0.2);
  t.insert(S(a | c), 0.7);
  EXPECT_EQ(t.lookup(S(a | c)), 0.7);
  EXPECT_EQ(t.size(), 1u);
}

TEST(PowersetTree, EmptySetLivesBesideTheTrie) {
  powerset_tree<> t(3);
  EXPECT_FALSE(t.lookup(S(0)).has_value());
  t.insert(S(0), 0.5);
  EXPECT_EQ(t.lookup(S(0)), 0.5);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.node_count(), 0u);
  EXPECT_TRUE(t.erase(S(0)));
  EXPECT_TRUE(t.empty());
}

TEST(PowersetTree, SupersetQueries) {
  auto t = store(4, {a | b, a | c, b | c | d});
  EXPECT_EQ(keys_of(t.supersets_of(S(b))), oracle::sorted({S(a | b), S(b | c | d)}));
  EXPECT_EQ(t.supersets_of(S(0)).size(), 3u);
  EXPECT_TRUE(t.supersets_of(S(a | b | c | d)).empty());
}

TEST(PowersetTree, SubsetQueries) {
  auto t = store(4, {a, b, c, 0, a | b, a | c, b | c | d});
  EXPECT_EQ(keys_of(t.subsets_of(S(a | b))), oracle::sorted({S(0), S(a), S(b), S(a | b)}));
  EXPECT_EQ(keys_of(t.subsets_of(S(0))), std::vector<subset>{S(0)});
  EXPECT_EQ(t.subsets_of(S(a | b | c | d)).size(), 7u);
  EXPECT_TRUE(store(4, {a}).subsets_of(S(0)).empty());
}

TEST(PowersetTree, SmallestSuperset) {
  auto t = store(4, {a | b, a | c, b | c | d, a, b, c, 0});
  EXPECT_EQ(t.smallest_superset(S(b | c))->first, S(b | c | d));
  EXPECT_EQ(t.smallest_superset(S(a))->first, S(a));
  EXPECT_FALSE(t.smallest_superset(S(a | d)).has_value());
}

TEST(PowersetTree, LargestSubset) {
  auto t = store(3, {a, a | b, a | b | c});
  EXPECT_EQ(t.largest_subset(S(a | b))->first, S(a | b));
  EXPECT_EQ(t.largest_subset(S(a | c))->first, S(a));
  EXPECT_FALSE(t.largest_subset(S(b)).has_value());
}

TEST(PowersetTree, RejectsKeysBeyondWidth) {
  powerset_tree<> t(3);
  EXPECT_THROW(t.insert(S(d), 1.0), emt::error);
  EXPECT_THROW((void)t.lookup(S(d)), emt::error);
}

TEST(PowersetTree, CopyIsDeep) {
  auto t = store(4, {a, b | c, a | b | d});
  auto u = t;
  u.insert(S(c), 9.0);
  u.erase(S(a));
  EXPECT_EQ(t.lookup(S(a)), 1.0);
  EXPECT_FALSE(t.lookup(S(c)).has_value());
  EXPECT_TRUE(t.check_invariants());
  EXPECT_TRUE(u.check_invariants());
}

TEST(PowersetTree, RandomStoresAgreeWithLinearScan) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t F = 1 + rng() % 64;
    auto keys = oracle::random_support(rng, n, F);
    powerset_tree<> t(n);
    std::map<std::uint64_t, double> ref;
    for (auto k : keys) {
      const double v = static_cast<double>(rng() % 1000);
      t.insert(k, v);
      ref[k.word(0)] = v;
    }
    ASSERT_TRUE(t.check_invariants());
    ASSERT_EQ(t.size(), ref.size());
    const std::size_t nonempty = ref.size() - ref.count(0);
    ASSERT_LE(t.node_count(), nonempty == 0 ? 0 : 2 * nonempty - 1);

    for (int q = 0; q < 8; ++q) {
      const auto key = S(rng() & ((std::uint64_t{1} << n) - 1));
      std::vector<subset> sup, sub;
      for (const auto& [w, v] : ref) {
        if (key.is_subset_of(S(w))) sup.push_back(S(w));
        if (S(w).is_subset_of(key)) sub.push_back(S(w));
      }
      sup = oracle::sorted(sup);
      sub = oracle::sorted(sub);
      ASSERT_EQ(keys_of(t.supersets_of(key)), sup);
      ASSERT_EQ(keys_of(t.subsets_of(key)), sub);

      std::size_t visited = 0;
      const auto found = t.lookup(key, &visited);
      ASSERT_LE(visited, n);
      ASSERT_EQ(found.has_value(), ref.count(key.word(0)) == 1);

      const auto small = t.smallest_superset(key);
      ASSERT_EQ(small.has_value(), !sup.empty());
      if (small) {
        ASSERT_EQ(small->first.count(), sup.front().count());
      }
      const auto large = t.largest_subset(key);
      ASSERT_EQ(large.has_value(), !sub.empty());
      if (large) {
        ASSERT_EQ(large->first.count(), sub.back().count());
      }
    }

    // Same keys, another insertion order: same answers.
    std::shuffle(keys.begin(), keys.end(), rng);
    powerset_tree<> u(n);
    for (auto k : keys) u.insert(k, ref[k.word(0)]);
    for (const auto& [w, v] : ref) ASSERT_EQ(u.lookup(S(w)), v);
  }
}

TEST(PowersetTree, SmallestSupersetOfMeetClosedStoreIsTheMeet) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const auto family = oracle::fixpoint_closure(oracle::random_support(rng, n, 1 + rng() % 8), true);
    powerset_tree<> t(n);
    for (auto k : family) t.insert(k, 0.0);
    const auto key = S(rng() & ((std::uint64_t{1} << n) - 1));
    subset meet = subset::full(n);
    bool any = false;
    for (auto k : family)
      if (key.is_subset_of(k)) {
        meet &= k;
        any = true;
      }
    const auto got = t.smallest_superset(key);
    ASSERT_EQ(got.has_value(), any);
    if (any) {
      ASSERT_EQ(got->first, meet);
    }
  }
}

TEST(PowersetTree, LargestSubsetOfJoinClosedStoreIsTheJoin) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const auto family = oracle::fixpoint_closure(oracle::random_support(rng, n, 1 + rng() % 8), false);
    powerset_tree<> t(n);
    for (auto k : family) t.insert(k, 0.0);
    const auto key = S(rng() & ((std::uint64_t{1} << n) - 1));
    subset join;
    bool any = false;
    for (auto k : family)
      if (k.is_subset_of(key)) {
        join |= k;
        any = true;
      }
    const auto got = t.largest_subset(key);
    ASSERT_EQ(got.has_value(), any);
    if (any) {
      ASSERT_EQ(got->first, join);
    }
  }
}

TEST(PowersetTree, RandomInsertEraseKeepsInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    powerset_tree<> t(n);
    std::map<std::uint64_t, double> ref;
    for (int step = 0; step < 200; ++step) {
      const auto k = S(rng() & ((std::uint64_t{1} << n) - 1));
      if (rng() % 3 == 0) {
        ASSERT_EQ(t.erase(k), ref.erase(k.word(0)) == 1);
      } else {
        t.insert(k, step);
        ref[k.word(0)] = step;
      }
      ASSERT_TRUE(t.check_invariants());
    }
    ASSERT_EQ(t.size(), ref.size());
    for (const auto& [w, v] : ref) ASSERT_EQ(t.lookup(S(w)), v);
    std::size_t listed = 0;
    t.for_each([&](const subset& k, double v) {
      ++listed;
      ASSERT_EQ(ref.at(k.word(0)), v);
    });
    ASSERT_EQ(listed, ref.size());
  }
}

TEST(PowersetTree, ProxyCountsTouchedNodes) {
  auto t = store(4, {a | b, a | c, b | c | d, a, b, c, 0});
  std::size_t touched = 0;
  (void)t.smallest_superset(S(b | c), &touched);
  EXPECT_GT(touched, 0u);
  EXPECT_LE(touched, t.node_count());
}

TEST(PowersetTree, WideKeys) {
  using wide = emt::basic_subset<2>;
  powerset_tree<wide> t(100);
  wide x = wide::singleton(70), y = wide::singleton(70);
  y.set(3);
  wide z = wide::singleton(99);
  t.insert(x, 1.0);
  t.insert(y, 2.0);
  t.insert(z, 3.0);
  EXPECT_TRUE(t.check_invariants());
  EXPECT_EQ(t.lookup(y), 2.0);
  EXPECT_EQ(t.supersets_of(x).size(), 2u);
  EXPECT_EQ(t.smallest_superset(wide::singleton(3))->first, y);
}
