#pragma once

// Brute-force Union-Find recognition: explores every tree reachable by legal
// pushes. Each push raises the depth-sum, which never exceeds n^2, so the
// reachable set is finite.

#include <string>
#include <unordered_set>
#include <vector>

#include "uftree/canonical.hpp"
#include "uftree/ops.hpp"
#include "uftree/recognizer.hpp"

namespace uftree {

inline constexpr std::size_t kDefaultOracleCap = 10;

inline bool brute_force_is_uf(const RankedTree& t, std::size_t max_nodes = kDefaultOracleCap) {
  if (t.size() > max_nodes) {
    throw CapExceeded("oracle: " + std::to_string(t.size()) + " nodes exceeds cap " +
                      std::to_string(max_nodes));
  }
  std::unordered_set<std::string> seen{canonical_key(t)};
  std::vector<RankedTree> pending{t};
  while (!pending.empty()) {
    RankedTree cur = std::move(pending.back());
    pending.pop_back();
    if (is_union_tree(cur)) return true;
    const auto kids = cur.children();
    for (const auto& siblings : kids) {
      for (NodeId x : siblings) {
        for (NodeId y : siblings) {
          if (cur.rank(x) >= cur.rank(y)) continue;
          RankedTree next = push(cur, x, y);
          if (seen.insert(canonical_key(next)).second) pending.push_back(std::move(next));
        }
      }
    }
  }
  return false;
}

}  // namespace uftree
