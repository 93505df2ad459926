#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "uftree/error.hpp"

namespace uftree {

using NodeId = std::uint32_t;
using Rank = std::uint32_t;

inline constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

// Inputs carrying a larger rank are rejected. A genuine Union-Find tree on
// n nodes never has a root rank above floor(log2 n).
inline constexpr Rank kMaxRank = Rank{1} << 16;

enum class TreeDefect {
  none,
  empty,
  size_mismatch,
  dangling_parent,
  self_parent,
  no_root,
  multiple_roots,
  cycle,
  rank_too_large,
  rank_not_decreasing,
};

inline const char* to_string(TreeDefect d) {
  switch (d) {
    case TreeDefect::none: return "ok";
    case TreeDefect::empty: return "empty tree";
    case TreeDefect::size_mismatch: return "parent and rank tables differ in size";
    case TreeDefect::dangling_parent: return "parent id out of range";
    case TreeDefect::self_parent: return "node is its own parent";
    case TreeDefect::no_root: return "no root";
    case TreeDefect::multiple_roots: return "multiple roots";
    case TreeDefect::cycle: return "cyclic parent chain";
    case TreeDefect::rank_too_large: return "rank exceeds cap";
    case TreeDefect::rank_not_decreasing: return "rank not strictly decreasing on edge";
  }
  return "?";
}

// Outcome of validating a raw parent/rank table. `node` is the first
// offending node (kNoParent when the defect is global).
struct TreeCheck {
  TreeDefect defect = TreeDefect::none;
  NodeId node = kNoParent;

  bool ok() const noexcept { return defect == TreeDefect::none; }

  std::string message() const {
    std::string m = to_string(defect);
    if (node != kNoParent) m += " at node " + std::to_string(node);
    return m;
  }
};

// Checks a raw parent table (kNoParent marks the root) against the ranked
// tree invariants. Structural defects are reported before rank defects.
inline TreeCheck validate(std::span<const NodeId> parent, std::span<const Rank> rank) {
  const std::size_t n = parent.size();
  if (n == 0) return {TreeDefect::empty};
  if (rank.size() != n) return {TreeDefect::size_mismatch};

  NodeId root = kNoParent;
  for (NodeId x = 0; x < n; ++x) {
    const NodeId p = parent[x];
    if (p == kNoParent) {
      if (root != kNoParent) return {TreeDefect::multiple_roots, x};
      root = x;
    } else if (p >= n) {
      return {TreeDefect::dangling_parent, x};
    } else if (p == x) {
      return {TreeDefect::self_parent, x};
    }
  }
  if (root == kNoParent) return {TreeDefect::no_root};

  // 0 = unvisited, 1 = on current chain, 2 = reaches the root.
  std::vector<std::uint8_t> state(n, 0);
  state[root] = 2;
  std::vector<NodeId> chain;
  for (NodeId x = 0; x < n; ++x) {
    NodeId y = x;
    chain.clear();
    while (state[y] == 0) {
      state[y] = 1;
      chain.push_back(y);
      y = parent[y];
    }
    if (state[y] == 1) return {TreeDefect::cycle, x};
    for (NodeId z : chain) state[z] = 2;
  }

  for (NodeId x = 0; x < n; ++x) {
    if (rank[x] > kMaxRank) return {TreeDefect::rank_too_large, x};
  }
  for (NodeId x = 0; x < n; ++x) {
    if (parent[x] != kNoParent && rank[x] >= rank[parent[x]]) {
      return {TreeDefect::rank_not_decreasing, x};
    }
  }
  return {};
}

// A rooted tree on dense node ids 0..size()-1 whose ranks strictly decrease
// from parent to child. Instances are always valid; construction validates.
class RankedTree {
 public:
  RankedTree(std::vector<NodeId> parent, std::vector<Rank> rank)
      : parent_(std::move(parent)), rank_(std::move(rank)) {
    const TreeCheck check = validate(parent_, rank_);
    if (!check.ok()) throw InvalidTree(check.message());
    root_ = static_cast<NodeId>(
        std::find(parent_.begin(), parent_.end(), kNoParent) - parent_.begin());
  }

  static RankedTree singleton(Rank r = 0) { return RankedTree({kNoParent}, {r}); }

  std::size_t size() const noexcept { return parent_.size(); }
  NodeId root() const noexcept { return root_; }
  bool contains(NodeId x) const noexcept { return x < parent_.size(); }
  bool is_root(NodeId x) const noexcept { return x == root_; }

  NodeId parent(NodeId x) const { return parent_.at(x); }
  Rank rank(NodeId x) const { return rank_.at(x); }
  // Rank of the root.
  Rank rank() const noexcept { return rank_[root_]; }

  std::span<const NodeId> parents() const noexcept { return parent_; }
  std::span<const Rank> ranks() const noexcept { return rank_; }

  // Children lists for every node, each sorted by id.
  std::vector<std::vector<NodeId>> children() const {
    std::vector<std::vector<NodeId>> out(size());
    for (NodeId x = 0; x < size(); ++x) {
      if (parent_[x] != kNoParent) out[parent_[x]].push_back(x);
    }
    return out;
  }

  std::vector<NodeId> children(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < size(); ++y) {
      if (parent_[y] == x) out.push_back(y);
    }
    return out;
  }

  std::size_t depth(NodeId x) const {
    std::size_t d = 0;
    for (NodeId y = x; parent_.at(y) != kNoParent; y = parent_[y]) ++d;
    return d;
  }

  // True iff `a` is a non-strict ancestor of `x`.
  bool is_ancestor(NodeId a, NodeId x) const {
    for (NodeId y = x;; y = parent_[y]) {
      if (y == a) return true;
      if (parent_[y] == kNoParent) return false;
    }
  }

  std::vector<std::size_t> depths() const {
    std::vector<std::size_t> d(size(), 0);
    for (NodeId x : preorder()) {
      if (parent_[x] != kNoParent) d[x] = d[parent_[x]] + 1;
    }
    return d;
  }

  std::size_t depth_sum() const {
    const auto d = depths();
    return std::accumulate(d.begin(), d.end(), std::size_t{0});
  }

  std::size_t height() const {
    const auto d = depths();
    return *std::max_element(d.begin(), d.end());
  }

  // Nodes ordered so that every parent precedes its children.
  std::vector<NodeId> preorder() const {
    const auto kids = children();
    std::vector<NodeId> order;
    order.reserve(size());
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (auto it = kids[x].rbegin(); it != kids[x].rend(); ++it) stack.push_back(*it);
    }
    return order;
  }

  friend bool operator==(const RankedTree& a, const RankedTree& b) {
    return a.parent_ == b.parent_ && a.rank_ == b.rank_;
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<Rank> rank_;
  NodeId root_ = 0;
};

}  // namespace uftree
