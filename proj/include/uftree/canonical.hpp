#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "uftree/tree.hpp"

namespace uftree {

// Assigns every node a class number such that two nodes of the same tree get
// equal numbers iff their subtrees are isomorphic as unordered rank-labelled
// trees. Classes are numbered bottom-up level by level (AHU style), so a
// node's class exceeds the classes of all its descendants.
inline std::vector<std::uint32_t> subtree_classes(const RankedTree& t) {
  const auto kids = t.children();
  const auto order = t.preorder();

  std::vector<std::uint32_t> height(t.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (NodeId c : kids[*it]) height[*it] = std::max(height[*it], height[c] + 1);
  }
  const std::uint32_t max_height = height[t.root()];
  std::vector<std::vector<NodeId>> levels(max_height + 1);
  for (NodeId x = 0; x < t.size(); ++x) levels[height[x]].push_back(x);

  std::vector<std::uint32_t> cls(t.size(), 0);
  std::vector<std::vector<std::uint32_t>> signature(t.size());
  std::uint32_t next = 0;
  for (auto& level : levels) {
    for (NodeId x : level) {
      auto& sig = signature[x];
      sig.reserve(kids[x].size() + 1);
      sig.push_back(t.rank(x));
      for (NodeId c : kids[x]) sig.push_back(cls[c]);
      std::sort(sig.begin() + 1, sig.end());
    }
    std::sort(level.begin(), level.end(),
              [&](NodeId a, NodeId b) { return signature[a] < signature[b]; });
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (i > 0 && signature[level[i]] != signature[level[i - 1]]) ++next;
      cls[level[i]] = next;
    }
    ++next;
  }
  return cls;
}

struct CanonicalForm {
  // Byte string, equal for two trees iff they are isomorphic.
  std::string key;
  // order[i] is the node emitted at position i. For isomorphic trees a and b
  // the map a.order[i] -> b.order[i] is an isomorphism.
  std::vector<NodeId> order;
};

namespace detail {

inline void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace detail

// Preorder walk with children sorted by class, emitting (rank, child count)
// for every node.
inline CanonicalForm canonical_form(const RankedTree& t) {
  const auto cls = subtree_classes(t);
  auto kids = t.children();
  for (auto& k : kids) {
    std::stable_sort(k.begin(), k.end(), [&](NodeId a, NodeId b) { return cls[a] < cls[b]; });
  }
  CanonicalForm form;
  form.order.reserve(t.size());
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    form.order.push_back(x);
    detail::append_varint(form.key, t.rank(x));
    detail::append_varint(form.key, kids[x].size());
    for (auto it = kids[x].rbegin(); it != kids[x].rend(); ++it) stack.push_back(*it);
  }
  return form;
}

inline std::string canonical_key(const RankedTree& t) { return canonical_form(t).key; }

}  // namespace uftree
