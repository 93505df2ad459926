#pragma once

// Seeded instance generators: random Union-Find trees, random operation
// logs, exhaustive small-tree enumeration and structure-preserving mutants.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "uftree/canonical.hpp"
#include "uftree/forest.hpp"
#include "uftree/tree.hpp"

namespace uftree {

// Merges random pairs of current roots, interleaving path compressions on
// random elements with probability collapse_prob per step, until one tree
// remains. collapse_prob == 0 yields a Union tree.
inline RankedTree random_uf_tree(std::size_t n, std::uint64_t seed, double collapse_prob) {
  if (n == 0) throw PreconditionError("random_uf_tree: n must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution collapse(std::clamp(collapse_prob, 0.0, 1.0));
  std::uniform_int_distribution<Element> element(0, static_cast<Element>(n - 1));

  Forest f(n);
  std::vector<Element> roots(n);
  for (Element i = 0; i < n; ++i) roots[i] = i;
  while (roots.size() > 1) {
    if (collapse_prob > 0 && collapse(rng)) {
      f.find(element(rng));
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    f.unite(roots[i], roots[j]);
    const Element survivor = f.find_root(roots[i]);
    const std::size_t gone = survivor == roots[i] ? j : i;
    roots[gone] = roots.back();
    roots.pop_back();
  }
  while (collapse_prob > 0 && collapse_prob < 1 && collapse(rng)) f.find(element(rng));
  return export_trees(f).front().tree;
}

// "makeset n" followed by `ops` random unions and finds.
inline OpLog random_oplog(std::size_t n, std::size_t ops, std::uint64_t seed, double find_prob) {
  if (n == 0) throw PreconditionError("random_oplog: n must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution is_find(std::clamp(find_prob, 0.0, 1.0));
  std::uniform_int_distribution<Element> element(0, static_cast<Element>(n - 1));
  OpLog log{op::MakeSets{n}};
  for (std::size_t i = 0; i < ops; ++i) {
    if (find_prob > 0 && is_find(rng)) {
      log.push_back(op::Find{element(rng)});
    } else {
      const Element a = element(rng);
      log.push_back(op::Union{a, element(rng)});
    }
  }
  return log;
}

// "makeset n" followed by up to `ops` unions, each naming two distinct
// current roots. No union triggers a path compression, so the final forest
// holds Union trees only.
inline OpLog random_merge_log(std::size_t n, std::size_t ops, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("random_merge_log: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Element> roots(n);
  for (Element i = 0; i < n; ++i) roots[i] = i;
  OpLog log{op::MakeSets{n}};
  Forest f(n);
  for (std::size_t i = 0; i < ops && roots.size() > 1; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    log.push_back(op::Union{roots[a], roots[b]});
    f.unite(roots[a], roots[b]);
    const std::size_t gone = f.is_root(roots[a]) ? b : a;
    roots[gone] = roots.back();
    roots.pop_back();
  }
  return log;
}

inline constexpr std::size_t kMaxEnumerationNodes = 7;

// Calls `visit` once per isomorphism class of ranked trees with at most
// max_nodes nodes whose ranks are bounded by height + 1. The bound admits
// labelings that are not Union-Find trees; strictness still holds, so every
// emitted tree is valid.
inline void for_each_tree(std::size_t max_nodes, const std::function<void(const RankedTree&)>& visit) {
  if (max_nodes > kMaxEnumerationNodes) {
    throw CapExceeded("enumerate_trees: max_nodes " + std::to_string(max_nodes) + " exceeds " +
                      std::to_string(kMaxEnumerationNodes));
  }
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    std::map<std::string, RankedTree> found;
    // parent[i] < i enumerates every rooted tree shape (with repetitions)
    std::vector<NodeId> parent(n, kNoParent);
    std::vector<Rank> rank(n, 0);
    std::vector<std::size_t> depth(n, 0);

    std::function<void(NodeId, Rank)> label = [&](NodeId i, Rank max_rank) {
      if (i == n) {
        RankedTree t(parent, rank);
        auto key = canonical_key(t);
        found.try_emplace(std::move(key), std::move(t));
        return;
      }
      if (i > 0 && rank[parent[i]] == 0) return;
      const Rank cap = i == 0 ? max_rank : rank[parent[i]] - 1;
      for (Rank r = 0; r <= cap; ++r) {
        rank[i] = r;
        label(i + 1, max_rank);
      }
    };
    std::function<void(NodeId)> shape = [&](NodeId i) {
      if (i == n) {
        const std::size_t height = *std::max_element(depth.begin(), depth.end());
        label(0, static_cast<Rank>(height + 1));
        return;
      }
      for (NodeId p = 0; p < i; ++p) {
        parent[i] = p;
        depth[i] = depth[p] + 1;
        shape(i + 1);
      }
    };
    shape(1);
    for (const auto& [key, t] : found) visit(t);
  }
}

inline std::vector<RankedTree> enumerate_trees(std::size_t max_nodes) {
  std::vector<RankedTree> out;
  for_each_tree(max_nodes, [&](const RankedTree& t) { out.push_back(t); });
  return out;
}

// Applies one random perturbation that keeps the tree valid: a rank change
// by one on any node (raising the root excepted) or moving a nonroot node
// under a different node of higher rank outside its own subtree.
inline RankedTree mutate(const RankedTree& t, std::uint64_t seed) {
  struct Mutation {
    NodeId node;
    NodeId new_parent;  // kNoParent: rank change
    int delta;
  };
  const auto kids = t.children();
  std::vector<Mutation> options;
  for (NodeId x = 0; x < t.size(); ++x) {
    Rank top_child = 0;
    bool has_child = false;
    for (NodeId c : kids[x]) {
      top_child = std::max(top_child, t.rank(c));
      has_child = true;
    }
    if (!t.is_root(x) && t.rank(x) + 1 < t.rank(t.parent(x))) options.push_back({x, kNoParent, +1});
    if (t.rank(x) >= 1 && (!has_child || top_child + 1 < t.rank(x))) options.push_back({x, kNoParent, -1});
    if (t.is_root(x)) continue;
    for (NodeId p = 0; p < t.size(); ++p) {
      if (p != t.parent(x) && t.rank(p) > t.rank(x) && !t.is_ancestor(x, p)) options.push_back({x, p, 0});
    }
  }
  if (options.empty()) throw PreconditionError("mutate: no legal mutation exists");

  std::mt19937_64 rng(seed);
  const Mutation m = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  std::vector<Rank> rank(t.ranks().begin(), t.ranks().end());
  if (m.new_parent == kNoParent) {
    rank[m.node] = static_cast<Rank>(static_cast<int>(rank[m.node]) + m.delta);
  } else {
    parent[m.node] = m.new_parent;
  }
  return RankedTree(std::move(parent), std::move(rank));
}

}  // namespace uftree
