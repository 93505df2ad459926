#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "uftree/canonical.hpp"
#include "uftree/generators.hpp"
#include "uftree/ops.hpp"
#include "uftree/reduction.hpp"
#include "uftree/text_format.hpp"

namespace uftree {
namespace {

using testing::walk_collapsed;
using testing::walk_merged;
using testing::walk_pushed;
using testing::walk_s;
using testing::walk_t;

TreeCheck check_of(std::vector<NodeId> parent, std::vector<Rank> rank) { return validate(parent, rank); }

TEST(Validate, AcceptsSingleton) { EXPECT_TRUE(check_of({kNoParent}, {0}).ok()); }

TEST(Validate, AcceptsWalkthroughTree) {
  const RankedTree s = walk_s();
  EXPECT_TRUE(validate(s.parents(), s.ranks()).ok());
}

TEST(Validate, RejectsEqualRankOnEdge) {
  const TreeCheck c = check_of({kNoParent, 0}, {1, 1});
  EXPECT_EQ(c.defect, TreeDefect::rank_not_decreasing);
  EXPECT_EQ(c.node, 1u);
}

TEST(Validate, RejectsStructuralDefects) {
  EXPECT_EQ(check_of({}, {}).defect, TreeDefect::empty);
  EXPECT_EQ(check_of({kNoParent, kNoParent}, {0, 0}).defect, TreeDefect::multiple_roots);
  EXPECT_EQ(check_of({1, 0}, {0, 1}).defect, TreeDefect::no_root);
  EXPECT_EQ(check_of({kNoParent, 5}, {1, 0}).defect, TreeDefect::dangling_parent);
  EXPECT_EQ(check_of({kNoParent, 1}, {1, 0}).defect, TreeDefect::self_parent);
  const TreeCheck cyc = check_of({kNoParent, 2, 1}, {3, 1, 2});
  EXPECT_EQ(cyc.defect, TreeDefect::cycle);
  EXPECT_EQ(cyc.node, 1u);
  EXPECT_EQ(check_of({kNoParent}, {kMaxRank + 1}).defect, TreeDefect::rank_too_large);
  EXPECT_TRUE(check_of({kNoParent}, {kMaxRank}).ok());
}

TEST(Validate, ConstructorThrows) {
  EXPECT_THROW(RankedTree({kNoParent, 0}, {0, 0}), InvalidTree);
}

TEST(Merge, WalkthroughMerge) {
  const RankedTree m = merge(walk_s(), walk_t());
  EXPECT_EQ(m, walk_merged());
  EXPECT_EQ(m.rank(), 3u);
  EXPECT_EQ(m.parent(testing::kY), testing::kR);
}

TEST(Merge, TwoSingletons) {
  const RankedTree m = merge(RankedTree::singleton(), RankedTree::singleton());
  EXPECT_EQ(m, RankedTree({kNoParent, 0}, {1, 0}));
}

TEST(Merge, LowerRankKeepsRootRank) {
  const RankedTree big = testing::chain3();
  const RankedTree m = merge(big, RankedTree::singleton());
  EXPECT_EQ(m.rank(), 2u);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.parent(3), m.root());
  EXPECT_EQ(m.depth(3), 1u);
}

TEST(Merge, RejectsWrongOrder) {
  EXPECT_THROW(merge(RankedTree::singleton(), testing::chain3()), PreconditionError);
}

TEST(Collapse, WalkthroughCollapse) {
  const RankedTree c = collapse(walk_pushed(), testing::kZ);
  EXPECT_EQ(c, walk_collapsed());
  for (NodeId v : {testing::kZ, testing::kX, testing::kY}) EXPECT_EQ(c.parent(v), testing::kR);
}

TEST(Collapse, RootAndDepthOneAreNoops) {
  const RankedTree t = walk_merged();
  EXPECT_EQ(collapse(t, t.root()), t);
  EXPECT_EQ(collapse(t, 1), t);
  EXPECT_THROW(collapse(t, 99), PreconditionError);
}

TEST(Push, WalkthroughPush) {
  const RankedTree before = walk_merged();
  const RankedTree after = push(before, testing::kX, testing::kY);
  EXPECT_EQ(after, walk_pushed());
  // x and its four children each sink one level
  EXPECT_EQ(after.depth_sum(), before.depth_sum() + 5);
}

TEST(Push, RejectsIllegalMoves) {
  const RankedTree star({kNoParent, 0, 0}, {1, 0, 0});
  EXPECT_THROW(push(star, 1, 2), PreconditionError);
  const RankedTree t = walk_merged();
  EXPECT_THROW(push(t, testing::kY, testing::kX), PreconditionError);  // rank(y) > rank(x)
  EXPECT_THROW(push(t, 5, testing::kY), PreconditionError);            // not siblings
  EXPECT_THROW(push(t, testing::kX, testing::kX), PreconditionError);
}

TEST(Precedes, WalkthroughPair) {
  EXPECT_TRUE(precedes(walk_merged(), walk_pushed()));
  EXPECT_FALSE(precedes(walk_pushed(), walk_merged()));
  EXPECT_TRUE(precedes(walk_merged(), walk_merged()));
}

TEST(Precedes, RequiresSameNodesAndRanks) {
  EXPECT_THROW(precedes(walk_s(), walk_merged()), PreconditionError);
  const RankedTree a({kNoParent, 0}, {1, 0});
  const RankedTree b({kNoParent, 0}, {2, 0});
  EXPECT_THROW(precedes(a, b), PreconditionError);
}

TEST(Subtree, WalkthroughNodeX) {
  const Subtree sub = subtree(walk_s(), testing::kX);
  EXPECT_EQ(sub.tree.size(), 5u);
  EXPECT_EQ(sub.tree.rank(), 1u);
  EXPECT_EQ(sub.tree.children(sub.tree.root()).size(), 4u);
  EXPECT_EQ(sub.original, (std::vector<NodeId>{2, 5, 6, 7, 8}));
}

TEST(Subtree, RootAndLeaf) {
  const RankedTree t = walk_s();
  EXPECT_EQ(subtree(t, t.root()).tree, t);
  EXPECT_EQ(subtree(t, 7).tree, RankedTree::singleton());
  EXPECT_THROW(subtree(t, 40), PreconditionError);
}

TEST(CanonicalKey, UnorderedSemantics) {
  EXPECT_EQ(canonical_key(RankedTree::singleton()), canonical_key(RankedTree::singleton()));
  const RankedTree a({kNoParent, 0, 0, 1}, {2, 1, 0, 0});
  const RankedTree b({kNoParent, 0, 0, 2}, {2, 0, 1, 0});
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_NE(canonical_key(make_apple(2)), canonical_key(make_basket(2)));
  EXPECT_NE(canonical_key(RankedTree::singleton(0)), canonical_key(RankedTree::singleton(1)));
}

// Relabel ids by a random permutation; the key must not change and the
// canonical orders must align into an isomorphism.
TEST(CanonicalKey, InvariantUnderIdPermutation) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RankedTree t = random_uf_tree(1 + seed % 40, seed, 0.3);
    std::vector<NodeId> perm(t.size());
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<NodeId> parent(t.size());
    std::vector<Rank> rank(t.size());
    for (NodeId x = 0; x < t.size(); ++x) {
      parent[perm[x]] = t.is_root(x) ? kNoParent : perm[t.parent(x)];
      rank[perm[x]] = t.rank(x);
    }
    const RankedTree u(parent, rank);
    const CanonicalForm ft = canonical_form(t);
    const CanonicalForm fu = canonical_form(u);
    ASSERT_EQ(ft.key, fu.key);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const NodeId a = ft.order[i];
      const NodeId b = fu.order[i];
      ASSERT_EQ(t.rank(a), u.rank(b));
      if (!t.is_root(a)) {
        const auto pa = std::find(ft.order.begin(), ft.order.end(), t.parent(a)) - ft.order.begin();
        const auto pb = std::find(fu.order.begin(), fu.order.end(), u.parent(b)) - fu.order.begin();
        ASSERT_EQ(pa, pb);
      }
    }
  }
}

// Distinct keys across the enumeration corpus means the key separates every
// non-isomorphic pair there.
TEST(CanonicalKey, SeparatesEnumeratedTrees) {
  std::set<std::string> keys;
  std::size_t count = 0;
  for_each_tree(6, [&](const RankedTree& t) {
    keys.insert(canonical_key(t));
    ++count;
  });
  EXPECT_EQ(keys.size(), count);
}

TEST(TextFormat, SerializeSingleton) { EXPECT_EQ(serialize_tree(RankedTree::singleton()), "1\n0 -1 0\n"); }

TEST(TextFormat, RoundTripsFlatTree) {
  const RankedTree t = make_flat_tree({{1, 2, 3, 4, 4}, 2}).tree;
  const ParsedTree p = parse_tree(serialize_tree(t));
  EXPECT_EQ(p.tree, t);
  EXPECT_EQ(canonical_key(p.tree), canonical_key(t));
}

TEST(TextFormat, RoundTripsRandomTrees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RankedTree t = random_uf_tree(1 + seed, seed, 0.5);
    EXPECT_EQ(parse_tree(serialize_tree(t)).tree, t);
  }
}

TEST(TextFormat, CommentsAndSparseIds) {
  const ParsedTree p = parse_tree("# a comment\n#another\n3\n10 -1 1\n20 10 0\n35 10 0\n");
  EXPECT_EQ(p.tree, RankedTree({kNoParent, 0, 0}, {1, 0, 0}));
  EXPECT_EQ(p.original_ids, (std::vector<std::uint64_t>{10, 20, 35}));
}

TEST(TextFormat, RejectsRankIncrease) {
  EXPECT_THROW(parse_tree("2\n0 -1 0\n1 0 1\n"), InvalidTree);
}

TEST(TextFormat, SyntaxErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      parse_tree(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("x\n"), 1u);
  EXPECT_EQ(line_of("# c\n2\n0 -1 1\n1  0 0\n"), 4u);
  EXPECT_EQ(line_of("2\n0 -1 1\n"), 3u);
  EXPECT_EQ(line_of("2\n1 -1 1\n0 1 0\n"), 3u);
  EXPECT_EQ(line_of("1\n0 -1 0\n9 9 9\n"), 3u);
  EXPECT_EQ(line_of("1\n0 -2 0\n"), 2u);
  EXPECT_EQ(line_of("0\n"), 1u);
  EXPECT_THROW(parse_tree("2\n0 -1 1\n1 7 0\n"), InvalidTree);
  EXPECT_THROW(parse_tree("1\n0 -1 70000\n"), InvalidTree);
}

TEST(TextFormat, DotLabelsRanks) {
  EXPECT_EQ(export_dot(RankedTree::singleton()), "digraph tree {\n  n0 [label=\"0:0\"];\n}\n");
  const std::string dot = export_dot(RankedTree({kNoParent, 0}, {1, 0}));
  EXPECT_NE(dot.find("n1 -> n0;"), std::string::npos);
  EXPECT_NE(dot.find("label=\"0:1\""), std::string::npos);
}

// Property sweep over random Union-Find trees and every legal push/merge.
TEST(Properties, OperationsPreserveValidityAndRanks) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RankedTree t = random_uf_tree(2 + seed % 20, seed, 0.4);
    const auto kids = t.children();
    for (const auto& sib : kids) {
      for (NodeId x : sib) {
        for (NodeId y : sib) {
          if (t.rank(x) >= t.rank(y)) continue;
          const RankedTree p = push(t, x, y);
          EXPECT_TRUE(std::equal(p.ranks().begin(), p.ranks().end(), t.ranks().begin()));
          EXPECT_TRUE(precedes(t, p));
          EXPECT_EQ(p.depth_sum(), t.depth_sum() + subtree(t, x).tree.size());
        }
      }
    }
    for (NodeId x = 0; x < t.size(); ++x) {
      const RankedTree c = collapse(t, x);
      EXPECT_TRUE(std::equal(c.ranks().begin(), c.ranks().end(), t.ranks().begin()));
      EXPECT_EQ(collapse(c, x), c);
    }
    const RankedTree s = random_uf_tree(1 + seed % 7, seed + 1000, 0.4);
    const RankedTree& hi = t.rank() >= s.rank() ? t : s;
    const RankedTree& lo = t.rank() >= s.rank() ? s : t;
    const RankedTree m = merge(hi, lo);
    EXPECT_EQ(m.size(), hi.size() + lo.size());
    EXPECT_EQ(m.rank(), lo.rank() < hi.rank() ? hi.rank() : hi.rank() + 1);
  }
}

// precedes(s, t) holds exactly when t is reachable from s by pushes, for
// every t sharing root and ranks with s. s ranges over the enumeration
// corpus up to six nodes.
TEST(Properties, PrecedesMatchesPushReachability) {
  std::size_t pairs = 0;
  for_each_tree(6, [&](const RankedTree& s) {
    const auto reach = testing::reachable_by_pushes(s);
    const std::size_t n = s.size();
    // every parent function respecting strict ranks, rooted at s.root()
    std::vector<std::vector<NodeId>> options(n);
    for (NodeId x = 0; x < n; ++x) {
      if (s.is_root(x)) {
        options[x] = {kNoParent};
        continue;
      }
      for (NodeId p = 0; p < n; ++p) {
        if (s.rank(p) > s.rank(x)) options[x].push_back(p);
      }
    }
    std::vector<std::size_t> pick(n, 0);
    std::vector<NodeId> parent(n);
    for (;;) {
      for (NodeId x = 0; x < n; ++x) parent[x] = options[x][pick[x]];
      const RankedTree t(parent, {s.ranks().begin(), s.ranks().end()});
      ASSERT_EQ(precedes(s, t), reach.count(parent) == 1) << serialize_tree(s) << serialize_tree(t);
      ++pairs;
      std::size_t i = 0;
      while (i < n && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == n) break;
    }
  });
  EXPECT_GT(pairs, 10000u);
}

}  // namespace
}  // namespace uftree
