#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "uftree/generators.hpp"
#include "uftree/oracle.hpp"
#include "uftree/recognizer.hpp"
#include "uftree/reduction.hpp"

namespace uftree {
namespace {

NodeId child_with_rank(const RankedTree& t, NodeId x, Rank r) {
  for (NodeId c : t.children(x)) {
    if (t.rank(c) == r) return c;
  }
  return kNoParent;
}

TEST(UnionCondition, Examples) {
  EXPECT_TRUE(satisfies_union_condition(RankedTree::singleton(), 0));
  const RankedTree apple = make_apple(3);
  EXPECT_TRUE(satisfies_union_condition(apple, apple.root()));
  const RankedTree basket = make_basket(5);
  EXPECT_FALSE(satisfies_union_condition(basket, basket.root()));
  // rank-1 leaves of the apple have no children
  EXPECT_FALSE(satisfies_union_condition(apple, child_with_rank(apple, apple.root(), 1)));
}

TEST(IsUnionTree, Examples) {
  EXPECT_TRUE(is_union_tree(RankedTree::singleton()));
  EXPECT_FALSE(is_union_tree(testing::chain3()));
  EXPECT_FALSE(is_union_tree(RankedTree::singleton(1)));
  // the leaf supplies the missing rank 0 at the root
  EXPECT_TRUE(is_union_tree(merge(testing::chain3(), RankedTree::singleton())));
}

TEST(IsUnionTree, AgreesWithMergeConstruction) {
  const auto buildable = testing::union_trees_by_merging(7);
  std::size_t positives = 0;
  for_each_tree(7, [&](const RankedTree& t) {
    const bool expected = buildable[t.size()].count(canonical_key(t)) == 1;
    ASSERT_EQ(is_union_tree(t), expected) << serialize_tree(t);
    positives += expected;
  });
  EXPECT_GT(positives, 5u);
}

TEST(CountFilter, Examples) {
  EXPECT_FALSE(count_filter(make_apple(1)));
  EXPECT_TRUE(count_filter(RankedTree::singleton()));
  EXPECT_TRUE(count_filter(make_basket(5)));
}

TEST(Recognizer, Singleton) {
  const Verdict v = is_union_find_tree(RankedTree::singleton());
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.reason, Reason::union_tree);
  EXPECT_FALSE(v.certificate);
  EXPECT_TRUE(v.steps().empty());
}

TEST(Recognizer, AppleFailsCountFilter) {
  for (std::uint64_t a : {1, 2, 3}) {
    const Verdict v = is_union_find_tree(make_apple(a));
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.reason, Reason::count_filter);
    EXPECT_FALSE(brute_force_is_uf(make_apple(a)));
  }
}

TEST(Recognizer, ChainLacksRankZeroAtRoot) {
  const Verdict v = is_union_find_tree(testing::chain3());
  EXPECT_FALSE(v.accepted);
  EXPECT_TRUE(v.decided());
  EXPECT_FALSE(brute_force_is_uf(testing::chain3()));
}

TEST(Recognizer, BasketIsNotUnionFind) {
  EXPECT_FALSE(brute_force_is_uf(make_basket(1)));
  EXPECT_FALSE(is_union_find_tree(make_basket(1)).accepted);
  EXPECT_FALSE(is_union_find_tree(make_basket(5)).accepted);
}

TEST(Recognizer, RankRangeFilter) {
  // rank 3 root over leaves of every rank: 4 nodes < 2^3
  const RankedTree t({kNoParent, 0, 0, 0}, {3, 0, 1, 2});
  EXPECT_FALSE(rank_range_filter(t));
  const Verdict v = is_union_find_tree(t);
  EXPECT_EQ(v.reason, Reason::count_filter);
  const RankedTree high({kNoParent, 0}, {kMaxRank, 0});
  EXPECT_FALSE(rank_range_filter(high));
}

TEST(Recognizer, MissingRankFilter) {
  const RankedTree t({kNoParent, 0, 1, 1, 0}, {2, 1, 0, 0, 0});
  EXPECT_TRUE(missing_rank_filter(t));
  const RankedTree u({kNoParent, 0, 1, 0, 0, 1}, {3, 2, 1, 0, 0, 0});
  EXPECT_FALSE(missing_rank_filter(u));
}

TEST(Recognizer, FlatTreeOfWorkedInstance) {
  const FlatTree flat = make_flat_tree({{1, 2, 3, 4, 4}, 2});
  const Verdict v = is_union_find_tree(flat.tree);
  ASSERT_TRUE(v.accepted);
  EXPECT_EQ(v.reason, Reason::certificate);
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(check_certificate(flat.tree, *v.certificate));
  EXPECT_LE(v.certificate->size(), flat.tree.size() * flat.tree.size());
}

TEST(Recognizer, BudgetExhaustionIsNotARejection) {
  const FlatTree flat = make_flat_tree({{1, 2, 3, 4, 4}, 2});
  const Verdict v = is_union_find_tree(flat.tree, {.budget = 3});
  EXPECT_FALSE(v.accepted);
  EXPECT_FALSE(v.decided());
  EXPECT_EQ(v.reason, Reason::search_exhausted);
}

TEST(Certificate, Examples) {
  EXPECT_TRUE(check_certificate(RankedTree::singleton(), {}));
  EXPECT_FALSE(check_certificate(make_apple(1), {}));
  // apple(1) plus two leaves: push one leaf under the rank-1 node
  const RankedTree t({kNoParent, 0, 0, 0, 0}, {2, 0, 1, 0, 0});
  const std::vector<PushStep> good{{3, 2}};
  EXPECT_TRUE(check_certificate(t, good));
  const std::vector<PushStep> wrong_dir{{2, 3}};
  EXPECT_FALSE(check_certificate(t, wrong_dir));
  const std::vector<PushStep> out_of_range{{3, 17}};
  EXPECT_FALSE(check_certificate(t, out_of_range));
  const std::vector<PushStep> not_siblings{{3, 2}, {4, 3}};
  EXPECT_FALSE(check_certificate(t, not_siblings));
}

TEST(Certificate, LengthBoundIsEnforced) {
  const RankedTree t({kNoParent, 0, 0, 0, 0}, {2, 0, 1, 0, 0});
  // 26 > 5^2 steps, even if each were legal the bound rejects
  std::vector<PushStep> many(26, PushStep{3, 2});
  EXPECT_FALSE(check_certificate(t, many));
}

// The derived pruning bound n >= 2^rank(root) never rejects a Union-Find
// tree of the enumeration corpus.
TEST(Oracle, RankRangeBoundHoldsOnCorpus) {
  for_each_tree(6, [&](const RankedTree& t) {
    if (!rank_range_filter(t) || !count_filter(t) || !missing_rank_filter(t)) {
      ASSERT_FALSE(brute_force_is_uf(t)) << serialize_tree(t);
    }
  });
}

TEST(Oracle, AgreesWithRecognizerOnCorpus) {
  std::size_t accepted = 0;
  std::size_t by_search = 0;
  for_each_tree(6, [&](const RankedTree& t) {
    const Verdict v = is_union_find_tree(t);
    ASSERT_TRUE(v.decided());
    ASSERT_EQ(v.accepted, brute_force_is_uf(t)) << serialize_tree(t);
    if (v.certificate) {
      ASSERT_TRUE(check_certificate(t, *v.certificate));
      ++by_search;
    }
    if (is_union_tree(t)) {
      ASSERT_EQ(v.reason, Reason::union_tree);
    }
    accepted += v.accepted;
  });
  EXPECT_GT(accepted, 0u);
  EXPECT_GT(by_search, 0u);
}

TEST(Oracle, CapIsEnforced) {
  const RankedTree t = random_uf_tree(11, 1, 0.0);
  EXPECT_THROW(brute_force_is_uf(t), CapExceeded);
  EXPECT_NO_THROW(brute_force_is_uf(t, 11));
}

// Mutants of random Union-Find trees: recognizer and oracle agree whichever
// way each mutant falls.
TEST(Oracle, AgreesOnMutants) {
  std::size_t rejected = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const RankedTree base = random_uf_tree(3 + seed % 8, seed, 0.4);
    std::optional<RankedTree> mutant;
    try {
      mutant = mutate(base, seed);
    } catch (const PreconditionError&) {
      continue;  // rigid tree, e.g. root(1) over two leaves
    }
    const RankedTree& m = *mutant;
    const Verdict v = is_union_find_tree(m);
    ASSERT_EQ(v.accepted, brute_force_is_uf(m)) << serialize_tree(m);
    if (v.certificate) {
      ASSERT_TRUE(check_certificate(m, *v.certificate));
    }
    rejected += !v.accepted;
  }
  EXPECT_GT(rejected, 50u);
}

TEST(Recognizer, AcceptsRandomUnionFindTrees) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RankedTree t = random_uf_tree(1 + seed % 120, seed, 0.35);
    const Verdict v = is_union_find_tree(t);
    ASSERT_TRUE(v.accepted) << serialize_tree(t);
    if (v.certificate) {
      ASSERT_TRUE(check_certificate(t, *v.certificate));
      ASSERT_LE(v.certificate->size(), t.size() * t.size());
    }
  }
}

TEST(Recognizer, DeterministicCertificates) {
  const FlatTree flat = make_flat_tree({{2, 2, 1, 3}, 2});
  const Verdict a = is_union_find_tree(flat.tree);
  const Verdict b = is_union_find_tree(flat.tree);
  ASSERT_TRUE(a.certificate && b.certificate);
  EXPECT_EQ(*a.certificate, *b.certificate);
}

}  // namespace
}  // namespace uftree
