#pragma once

#include <string>
#include <vector>

#include "uftree/tree.hpp"

namespace uftree {

// merge(t, s): the root of `s` becomes a child of the root of `t`. Node ids of
// `s` are shifted by t.size(). The surviving root keeps its rank when
// rank(s) < rank(t) and gains one otherwise.
inline RankedTree merge(const RankedTree& t, const RankedTree& s) {
  if (t.rank() < s.rank()) {
    throw PreconditionError("merge: rank(t)=" + std::to_string(t.rank()) +
                            " is below rank(s)=" + std::to_string(s.rank()));
  }
  const auto shift = static_cast<NodeId>(t.size());
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  std::vector<Rank> rank(t.ranks().begin(), t.ranks().end());
  parent.reserve(t.size() + s.size());
  rank.reserve(t.size() + s.size());
  for (NodeId x = 0; x < s.size(); ++x) {
    parent.push_back(s.is_root(x) ? t.root() : s.parent(x) + shift);
    rank.push_back(s.rank(x));
  }
  if (s.rank() >= t.rank()) rank[t.root()] = t.rank() + 1;
  return RankedTree(std::move(parent), std::move(rank));
}

// Reattaches every nonroot ancestor of x (x included) directly to the root.
inline RankedTree collapse(const RankedTree& t, NodeId x) {
  if (!t.contains(x)) throw PreconditionError("collapse: unknown node " + std::to_string(x));
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  for (NodeId y = x; !t.is_root(y); y = t.parent(y)) parent[y] = t.root();
  return RankedTree(std::move(parent), {t.ranks().begin(), t.ranks().end()});
}

inline bool can_push(const RankedTree& t, NodeId x, NodeId y) {
  return t.contains(x) && t.contains(y) && x != y && !t.is_root(x) && !t.is_root(y) &&
         t.parent(x) == t.parent(y) && t.rank(x) < t.rank(y);
}

// Moves x one level deeper, under its strictly higher-ranked sibling y.
inline RankedTree push(const RankedTree& t, NodeId x, NodeId y) {
  if (!can_push(t, x, y)) {
    throw PreconditionError("push: " + std::to_string(x) + " under " + std::to_string(y) +
                            " is not a push between siblings of increasing rank");
  }
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  parent[x] = y;
  return RankedTree(std::move(parent), {t.ranks().begin(), t.ranks().end()});
}

// The partial order on trees sharing nodes, root and ranks: s precedes t iff
// every ancestor relation of s also holds in t. Equivalently, s reaches t by
// a sequence of pushes.
inline bool precedes(const RankedTree& s, const RankedTree& t) {
  if (s.size() != t.size() || s.root() != t.root() ||
      !std::equal(s.ranks().begin(), s.ranks().end(), t.ranks().begin())) {
    throw PreconditionError("precedes: trees differ in node set, root or ranks");
  }
  for (NodeId x = 0; x < s.size(); ++x) {
    if (!s.is_root(x) && !t.is_ancestor(s.parent(x), x)) return false;
  }
  return true;
}

// A subtree re-densified to ids 0..k-1; `original[i]` is the id of node i in
// the source tree. Ids keep their relative order.
struct Subtree {
  RankedTree tree;
  std::vector<NodeId> original;
};

inline Subtree subtree(const RankedTree& t, NodeId x) {
  if (!t.contains(x)) throw PreconditionError("subtree: unknown node " + std::to_string(x));
  std::vector<NodeId> local(t.size(), kNoParent);
  std::vector<NodeId> original;
  for (NodeId y = 0; y < t.size(); ++y) {
    if (t.is_ancestor(x, y)) {
      local[y] = static_cast<NodeId>(original.size());
      original.push_back(y);
    }
  }
  std::vector<NodeId> parent;
  std::vector<Rank> rank;
  parent.reserve(original.size());
  rank.reserve(original.size());
  for (NodeId y : original) {
    parent.push_back(y == x ? kNoParent : local[t.parent(y)]);
    rank.push_back(t.rank(y));
  }
  return {RankedTree(std::move(parent), std::move(rank)), std::move(original)};
}

}  // namespace uftree
