#pragma once

// Hand-encoded trees from the merge/push/collapse walkthrough.
//
//   s: r(2) over four rank-1 nodes; the second of them, x, has four leaves,
//      one of which is z.
//   t: y(2) over two leaves.
// Ids in s: r=0, x=2, z=7. In the merged trees y=9.

#include "uftree/tree.hpp"

namespace uftree::testing {

inline constexpr NodeId kR = 0;
inline constexpr NodeId kX = 2;
inline constexpr NodeId kZ = 7;
inline constexpr NodeId kY = 9;

inline RankedTree walk_s() {
  return RankedTree({kNoParent, 0, 0, 0, 0, 2, 2, 2, 2}, {2, 1, 1, 1, 1, 0, 0, 0, 0});
}

inline RankedTree walk_t() { return RankedTree({kNoParent, 0, 0}, {2, 0, 0}); }

// merge(s, t)
inline RankedTree walk_merged() {
  return RankedTree({kNoParent, 0, 0, 0, 0, 2, 2, 2, 2, 0, 9, 9}, {3, 1, 1, 1, 1, 0, 0, 0, 0, 2, 0, 0});
}

// push(merged, x, y)
inline RankedTree walk_pushed() {
  return RankedTree({kNoParent, 0, 9, 0, 0, 2, 2, 2, 2, 0, 9, 9}, {3, 1, 1, 1, 1, 0, 0, 0, 0, 2, 0, 0});
}

// collapse(pushed, z)
inline RankedTree walk_collapsed() {
  return RankedTree({kNoParent, 0, 0, 0, 0, 2, 2, 0, 2, 0, 9, 9}, {3, 1, 1, 1, 1, 0, 0, 0, 0, 2, 0, 0});
}

// root(2) <- (1) <- (0)
inline RankedTree chain3() { return RankedTree({kNoParent, 0, 1}, {2, 1, 0}); }

}  // namespace uftree::testing
