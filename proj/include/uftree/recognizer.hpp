#pragma once

// Recognition of Union trees and Union-Find trees built with union-by-rank.
//
// A Union tree is one where every node's children ranks, as a set, are
// exactly {0, ..., rank-1}; this is checked in linear time.
//
// A tree is a Union-Find tree iff a sequence of pushes turns it into a Union
// tree. The exact decision searches a normal form of such sequences: the root
// keeps a set X of its children whose ranks cover {0, ..., R-1}, every other
// child y is pushed directly under some x in X with rank(x) > rank(y), and
// each enriched subtree rooted in X must again be a Union-Find tree. Deeper
// placements are found inside the recursive calls.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uftree/canonical.hpp"
#include "uftree/tree.hpp"

namespace uftree {

struct PushStep {
  NodeId node;    // the node moved one level down
  NodeId target;  // its former sibling, the new parent

  friend bool operator==(const PushStep&, const PushStep&) = default;
};

using Certificate = std::vector<PushStep>;

enum class Reason {
  union_tree,        // accepted: already a Union tree, no pushes needed
  certificate,       // accepted: push certificate attached
  count_filter,      // rejected: fewer rank-0 nodes than positive-rank nodes
  rank_range,        // rejected: fewer than 2^rank(root) nodes
  missing_rank,      // rejected: some rank below rank(root) has no depth-one node
  search_refuted,    // rejected: exhaustive search found no push normal form
  search_exhausted,  // undecided: caller's step budget ran out
};

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::union_tree: return "union-tree";
    case Reason::certificate: return "certificate";
    case Reason::count_filter: return "filter-count";
    case Reason::rank_range: return "filter-rank-range";
    case Reason::missing_rank: return "filter-missing-rank";
    case Reason::search_refuted: return "search-refuted";
    case Reason::search_exhausted: return "search-exhausted";
  }
  return "?";
}

struct Verdict {
  bool accepted = false;
  Reason reason = Reason::search_refuted;
  // Present iff reason == Reason::certificate.
  std::optional<Certificate> certificate;
  // Number of search nodes visited (0 when a filter decided).
  std::uint64_t search_steps = 0;

  bool decided() const noexcept { return reason != Reason::search_exhausted; }

  // The push sequence witnessing acceptance; empty for Union trees.
  std::span<const PushStep> steps() const noexcept {
    return certificate ? std::span<const PushStep>(*certificate) : std::span<const PushStep>();
  }
};

inline bool satisfies_union_condition(const RankedTree& t, NodeId x) {
  const Rank r = t.rank(x);
  std::vector<bool> seen(r, false);
  Rank distinct = 0;
  for (NodeId c : t.children(x)) {
    if (!seen[t.rank(c)]) {
      seen[t.rank(c)] = true;
      ++distinct;
    }
  }
  return distinct == r;
}

// First node (by id) whose children miss some rank below its own, if any.
// Linear in the number of nodes plus the largest rank.
inline std::optional<NodeId> first_union_violation(const RankedTree& t) {
  const Rank max_rank = t.rank();
  std::vector<Rank> distinct(t.size(), 0);
  // stamp[r] = 1 + last parent that counted a child of rank r
  std::vector<std::uint64_t> stamp(max_rank + 1, 0);
  const auto kids = t.children();
  for (NodeId x = 0; x < t.size(); ++x) {
    for (NodeId c : kids[x]) {
      if (stamp[t.rank(c)] != x + std::uint64_t{1}) {
        stamp[t.rank(c)] = x + std::uint64_t{1};
        ++distinct[x];
      }
    }
    if (distinct[x] != t.rank(x)) return x;
  }
  return std::nullopt;
}

inline bool is_union_tree(const RankedTree& t) { return !first_union_violation(t); }

// Every Union-Find tree has at least as many rank-0 nodes as nodes of
// positive rank; false certifies non-membership.
inline bool count_filter(const RankedTree& t) {
  std::size_t zeros = 0;
  for (Rank r : t.ranks()) zeros += (r == 0);
  return zeros >= t.size() - zeros;
}

// A root of rank r owns at least 2^r nodes in any Union-Find tree: merges
// double the size whenever they raise the rank, collapses keep the node set.
inline bool rank_range_filter(const RankedTree& t) {
  if (t.rank() >= 63) return false;
  return (std::uint64_t{1} << t.rank()) <= t.size();
}

// Pushes only remove depth-one nodes, so the root's children must already
// cover every rank below the root rank.
inline bool missing_rank_filter(const RankedTree& t) {
  std::vector<bool> seen(t.rank(), false);
  for (NodeId x = 0; x < t.size(); ++x) {
    if (!t.is_root(x) && t.parent(x) == t.root()) seen[t.rank(x)] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Replays the pushes and checks that the final tree is a Union tree and the
// sequence has at most n^2 steps.
inline bool check_certificate(const RankedTree& t, std::span<const PushStep> steps) {
  const std::size_t n = t.size();
  if (steps.size() > n * n) return false;
  std::vector<NodeId> parent(t.parents().begin(), t.parents().end());
  for (const PushStep& s : steps) {
    const NodeId x = s.node;
    const NodeId y = s.target;
    if (x >= n || y >= n || x == y) return false;
    if (parent[x] == kNoParent || parent[x] != parent[y]) return false;
    if (t.rank(x) >= t.rank(y)) return false;
    parent[x] = y;
  }
  return is_union_tree(RankedTree(std::move(parent), {t.ranks().begin(), t.ranks().end()}));
}

struct RecognizerOptions {
  // Maximum number of search nodes; unset means unlimited.
  std::optional<std::uint64_t> budget;
};

namespace detail {

struct BudgetExhausted {};

class UnionFindSearch {
 public:
  explicit UnionFindSearch(std::optional<std::uint64_t> budget) : budget_(budget) {}

  std::uint64_t steps() const noexcept { return steps_; }

  // Push certificate (ids of t) turning t into a Union tree, or nullopt when
  // t is not a Union-Find tree. Throws BudgetExhausted.
  std::optional<Certificate> decide(const RankedTree& t) {
    tick();
    if (is_union_tree(t)) return Certificate{};
    if (!count_filter(t) || !rank_range_filter(t) || !missing_rank_filter(t)) return std::nullopt;

    CanonicalForm form = canonical_form(t);
    if (auto it = memo_.find(form.key); it != memo_.end()) {
      if (!it->second) return std::nullopt;
      Certificate cert;
      cert.reserve(it->second->size());
      for (auto [a, b] : *it->second) cert.push_back({form.order[a], form.order[b]});
      return cert;
    }

    std::optional<Certificate> result = Level(*this, t).run();

    std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> entry;
    if (result) {
      std::vector<std::uint32_t> position(t.size());
      for (std::uint32_t i = 0; i < form.order.size(); ++i) position[form.order[i]] = i;
      entry.emplace();
      entry->reserve(result->size());
      for (const PushStep& s : *result) entry->emplace_back(position[s.node], position[s.target]);
    }
    memo_.emplace(std::move(form.key), std::move(entry));
    return result;
  }

 private:
  void tick() {
    ++steps_;
    if (budget_ && steps_ > *budget_) throw BudgetExhausted{};
  }

  // Search over (X, f) at the root of one tree.
  class Level {
   public:
    Level(UnionFindSearch& owner, const RankedTree& t)
        : owner_(owner), t_(t), kids_(t.children()), cls_(subtree_classes(t)),
          size_(t.size(), 1), balance_(t.size(), 0), child_ranks_(t.size(), 0) {
      const auto order = t.preorder();
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId x = *it;
        balance_[x] += t.rank(x) == 0 ? 1 : -1;
        if (!t.is_root(x)) {
          size_[t.parent(x)] += size_[x];
          balance_[t.parent(x)] += balance_[x];
          // rank(parent) <= rank(root) < 63 after the rank-range filter
          child_ranks_[t.parent(x)] |= std::uint64_t{1} << t.rank(x);
        }
      }

      // Children grouped by rank (descending) and isomorphism class; members
      // of a group are interchangeable.
      std::vector<NodeId> top = kids_[t.root()];
      std::sort(top.begin(), top.end(), [&](NodeId a, NodeId b) {
        if (t.rank(a) != t.rank(b)) return t.rank(a) > t.rank(b);
        if (cls_[a] != cls_[b]) return cls_[a] < cls_[b];
        return a < b;
      });
      for (NodeId c : top) {
        if (groups_.empty() || t.rank(groups_.back().members.front()) != t.rank(c) ||
            cls_[groups_.back().members.front()] != cls_[c]) {
          groups_.push_back({t.rank(c), {}});
        }
        groups_.back().members.push_back(c);
      }
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        groups_[g].closes_rank = g + 1 == groups_.size() || groups_[g + 1].rank != groups_[g].rank;
      }

      suffix_surplus_.assign(groups_.size() + 1, 0);
      suffix_size_.assign(groups_.size() + 1, 0);
      for (std::size_t g = groups_.size(); g-- > 0;) {
        const NodeId rep = groups_[g].members.front();
        const auto count = static_cast<std::int64_t>(groups_[g].members.size());
        suffix_surplus_[g] = suffix_surplus_[g + 1] + count * std::max<std::int64_t>(0, balance_[rep]);
        suffix_size_[g] = suffix_size_[g + 1] + count * static_cast<std::int64_t>(size_[rep]);
      }
    }

    std::optional<Certificate> run() {
      std::vector<Stayer> stayers;
      if (!assign(0, stayers)) return std::nullopt;
      return std::move(solution_);
    }

   private:
    struct Group {
      Rank rank;
      std::vector<NodeId> members;  // sorted by id
      bool closes_rank = false;     // last group of its rank
    };

    struct Stayer {
      NodeId node;
      std::vector<NodeId> grafts;
      std::vector<std::uint32_t> graft_classes;  // sorted
      std::int64_t balance;
      std::int64_t size;
      std::uint64_t ranks_below;  // ranks present among children and grafts
    };

    bool same_shape(const Stayer& a, const Stayer& b) const {
      return cls_[a.node] == cls_[b.node] && a.graft_classes == b.graft_classes;
    }

    bool assign(std::size_t g, const std::vector<Stayer>& stayers) {
      owner_.tick();
      if (g == groups_.size()) return finish(stayers);
      if (groups_[g].rank == 0) return place_leaves(stayers);

      const Group& group = groups_[g];
      std::vector<std::size_t> targets;
      for (std::size_t i = 0; i < stayers.size(); ++i) {
        if (t_.rank(stayers[i].node) > group.rank) targets.push_back(i);
      }
      std::stable_sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
        const Stayer& x = stayers[a];
        const Stayer& y = stayers[b];
        if (cls_[x.node] != cls_[y.node]) return cls_[x.node] < cls_[y.node];
        return x.graft_classes < y.graft_classes;
      });
      const bool rank_has_stayer = std::any_of(stayers.begin(), stayers.end(), [&](const Stayer& s) {
        return t_.rank(s.node) == group.rank;
      });
      const std::size_t count = group.members.size();
      const std::size_t min_stay = group.closes_rank && !rank_has_stayer ? 1 : 0;

      std::vector<std::size_t> split(targets.size(), 0);
      for (std::size_t stay = count + 1; stay-- > min_stay;) {
        if (targets.empty() && stay != count) break;
        if (distribute(g, stayers, targets, split, 0, count - stay, stay)) return true;
      }
      return false;
    }

    // Chooses how many of the pushed members go under each target. Targets
    // with identical shape receive non-increasing counts.
    bool distribute(std::size_t g, const std::vector<Stayer>& stayers,
                    const std::vector<std::size_t>& targets, std::vector<std::size_t>& split,
                    std::size_t i, std::size_t left, std::size_t stay) {
      if (i + 1 >= targets.size()) {
        if (targets.empty()) {
          if (left != 0) return false;
        } else {
          if (i > 0 && same_shape(stayers[targets[i]], stayers[targets[i - 1]]) && left > split[i - 1]) {
            return false;
          }
          split[i] = left;
        }
        return apply(g, stayers, targets, split, stay);
      }
      std::size_t hi = left;
      if (i > 0 && same_shape(stayers[targets[i]], stayers[targets[i - 1]])) hi = std::min(hi, split[i - 1]);
      for (std::size_t k = hi + 1; k-- > 0;) {
        split[i] = k;
        if (distribute(g, stayers, targets, split, i + 1, left - k, stay)) return true;
      }
      return false;
    }

    bool apply(std::size_t g, const std::vector<Stayer>& stayers, const std::vector<std::size_t>& targets,
               const std::vector<std::size_t>& split, std::size_t stay) {
      owner_.tick();
      const Group& group = groups_[g];
      std::vector<Stayer> next = stayers;
      std::size_t m = 0;
      for (; m < stay; ++m) {
        const NodeId c = group.members[m];
        next.push_back({c, {}, {}, balance_[c], static_cast<std::int64_t>(size_[c]), child_ranks_[c]});
      }
      for (std::size_t i = 0; i < targets.size(); ++i) {
        Stayer& s = next[targets[i]];
        for (std::size_t k = 0; k < split[i]; ++k, ++m) {
          const NodeId c = group.members[m];
          s.grafts.push_back(c);
          s.graft_classes.insert(std::upper_bound(s.graft_classes.begin(), s.graft_classes.end(), cls_[c]),
                                 cls_[c]);
          s.balance += balance_[c];
          s.size += static_cast<std::int64_t>(size_[c]);
          s.ranks_below |= std::uint64_t{1} << group.rank;
        }
      }

      if (group.closes_rank) {
        for (const Stayer& s : next) {
          if (t_.rank(s.node) > group.rank && !(s.ranks_below >> group.rank & 1)) return false;
        }
      }
      // Every enriched subtree must end with a nonnegative balance and at
      // least 2^rank nodes; only the remaining groups can still help.
      std::int64_t deficit = 0;
      std::int64_t missing = 0;
      for (const Stayer& s : next) {
        deficit += std::max<std::int64_t>(0, -s.balance);
        missing += std::max<std::int64_t>(0, (std::int64_t{1} << t_.rank(s.node)) - s.size);
      }
      if (deficit > suffix_surplus_[g + 1] || missing > suffix_size_[g + 1]) return false;

      return assign(g + 1, next);
    }

    // The rank-0 children form the last group and are interchangeable
    // leaves. Hanging one more leaf below a root of positive rank is a merge
    // with a singleton, so an enriched subtree that works with k leaves
    // works with any more. Each stayer therefore takes the fewest leaves it
    // needs, found by bisection, and one leaf stays for rank 0.
    bool place_leaves(const std::vector<Stayer>& stayers) {
      const Group& group = groups_.back();
      if (group.members.empty()) return false;
      std::size_t left = group.members.size() - 1;
      std::size_t m = 0;
      std::vector<Stayer> next = stayers;
      for (Stayer& s : next) {
        const std::int64_t floor = std::max<std::int64_t>(
            {0, -s.balance, (std::int64_t{1} << t_.rank(s.node)) - s.size});
        if (static_cast<std::uint64_t>(floor) > left) return false;
        auto works = [&](std::size_t k) {
          Stayer probe = s;
          for (std::size_t i = 0; i < k; ++i) probe.grafts.push_back(group.members[m + i]);
          std::vector<NodeId> original;
          return owner_.decide(build_enriched(probe, original)).has_value();
        };
        std::size_t lo = static_cast<std::size_t>(floor);
        std::size_t hi = left;
        if (!works(hi)) return false;
        while (lo < hi) {
          const std::size_t mid = lo + (hi - lo) / 2;
          if (works(mid)) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        for (std::size_t i = 0; i < lo; ++i) s.grafts.push_back(group.members[m++]);
        left -= lo;
      }
      for (; m < group.members.size(); ++m) {
        const NodeId c = group.members[m];
        next.push_back({c, {}, {}, balance_[c], 1, 0});
      }
      return finish(next);
    }

    bool finish(const std::vector<Stayer>& stayers) {
      Certificate cert;
      for (const Stayer& s : stayers) {
        for (NodeId y : s.grafts) cert.push_back({y, s.node});
      }
      for (const Stayer& s : stayers) {
        std::vector<NodeId> original;
        RankedTree enriched = build_enriched(s, original);
        std::optional<Certificate> inner = owner_.decide(enriched);
        if (!inner) return false;
        for (const PushStep& p : *inner) cert.push_back({original[p.node], original[p.target]});
      }
      solution_ = std::move(cert);
      return true;
    }

    // The subtree of s.node with every graft hung directly below it.
    RankedTree build_enriched(const Stayer& s, std::vector<NodeId>& original) const {
      std::vector<NodeId> parent;
      std::vector<Rank> rank;
      original.clear();
      auto add_subtree = [&](NodeId top, NodeId top_parent) {
        std::vector<std::pair<NodeId, NodeId>> stack{{top, top_parent}};
        while (!stack.empty()) {
          const auto [x, p] = stack.back();
          stack.pop_back();
          const auto local = static_cast<NodeId>(original.size());
          original.push_back(x);
          parent.push_back(p);
          rank.push_back(t_.rank(x));
          for (auto it = kids_[x].rbegin(); it != kids_[x].rend(); ++it) stack.push_back({*it, local});
        }
      };
      add_subtree(s.node, kNoParent);
      for (NodeId y : s.grafts) add_subtree(y, 0);
      return RankedTree(std::move(parent), std::move(rank));
    }

    UnionFindSearch& owner_;
    const RankedTree& t_;
    std::vector<std::vector<NodeId>> kids_;
    std::vector<std::uint32_t> cls_;
    std::vector<std::size_t> size_;
    std::vector<std::int64_t> balance_;
    std::vector<std::uint64_t> child_ranks_;
    std::vector<Group> groups_;
    std::vector<std::int64_t> suffix_surplus_;
    std::vector<std::int64_t> suffix_size_;
    Certificate solution_;
  };

  std::optional<std::uint64_t> budget_;
  std::uint64_t steps_ = 0;
  // Canonical key -> certificate in canonical positions (nullopt: refuted).
  std::unordered_map<std::string, std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>>> memo_;
};

}  // namespace detail

// Exact Union-Find tree recognition. Accepted verdicts of reason
// `certificate` carry a push sequence that check_certificate() accepts.
inline Verdict is_union_find_tree(const RankedTree& t, const RecognizerOptions& options = {}) {
  if (is_union_tree(t)) return {true, Reason::union_tree, std::nullopt, 0};
  if (!count_filter(t)) return {false, Reason::count_filter, std::nullopt, 0};
  if (!rank_range_filter(t)) return {false, Reason::rank_range, std::nullopt, 0};
  if (!missing_rank_filter(t)) return {false, Reason::missing_rank, std::nullopt, 0};

  detail::UnionFindSearch search(options.budget);
  try {
    std::optional<Certificate> cert = search.decide(t);
    if (!cert) return {false, Reason::search_refuted, std::nullopt, search.steps()};
    return {true, Reason::certificate, std::move(cert), search.steps()};
  } catch (const detail::BudgetExhausted&) {
    return {false, Reason::search_exhausted, std::nullopt, search.steps()};
  }
}

}  // namespace uftree
