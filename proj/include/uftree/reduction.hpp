#pragma once

// Compiles a k-way Partition instance into a "flat" ranked tree that is a
// Union-Find tree exactly when the instance is solvable.
//
//   apple(a):  rank-2 root, one rank-0 child, a rank-1 children
//   basket(H): rank-3 root, H+1 rank-0 children, one rank-1 child which has
//              one rank-0 child
//   flat tree: rank-4 root over a fixed 7-node part (a rank-0 leaf, a rank-1
//              node with a leaf, a rank-2 node with a leaf and a rank-1 node
//              with a leaf), one apple per weight and k baskets of size B.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "uftree/partition.hpp"
#include "uftree/recognizer.hpp"
#include "uftree/tree.hpp"

namespace uftree {

inline RankedTree make_apple(std::uint64_t weight) {
  if (weight < 1) throw PreconditionError("apple weight must be positive");
  std::vector<NodeId> parent{kNoParent, 0};
  std::vector<Rank> rank{2, 0};
  for (std::uint64_t i = 0; i < weight; ++i) {
    parent.push_back(0);
    rank.push_back(1);
  }
  return RankedTree(std::move(parent), std::move(rank));
}

inline RankedTree make_basket(std::uint64_t size) {
  if (size < 1) throw PreconditionError("basket size must be positive");
  std::vector<NodeId> parent{kNoParent};
  std::vector<Rank> rank{3};
  for (std::uint64_t i = 0; i <= size; ++i) {
    parent.push_back(0);
    rank.push_back(0);
  }
  const auto one = static_cast<NodeId>(parent.size());
  parent.push_back(0);
  rank.push_back(1);
  parent.push_back(one);
  rank.push_back(0);
  return RankedTree(std::move(parent), std::move(rank));
}

struct FlatTree {
  RankedTree tree;
  std::vector<NodeId> apple_roots;   // in weight order
  std::vector<NodeId> basket_roots;
  std::uint64_t basket_size = 0;
  std::vector<std::uint64_t> weights;
};

// Node count of make_flat_tree(inst): 8 + sum(a_i + 2) + k (B + 4).
inline std::uint64_t flat_tree_size(const PartitionInstance& inst) {
  inst.check();
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto add = [&](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
  auto mul = [&](std::uint64_t a, std::uint64_t b) { return b != 0 && a > kMax / b ? kMax : a * b; };
  const std::uint64_t apples = add(inst.total(), mul(2, inst.weights.size()));
  return add(add(8, apples), mul(inst.parts, add(inst.target(), 4)));
}

inline constexpr std::uint64_t kDefaultFlatTreeCap = 100000;

inline FlatTree make_flat_tree(const PartitionInstance& inst, std::uint64_t max_nodes = kDefaultFlatTreeCap) {
  inst.check();
  const std::uint64_t n = flat_tree_size(inst);
  if (n > max_nodes) {
    throw CapExceeded("flat tree: " + std::to_string(n) + " nodes exceeds cap " + std::to_string(max_nodes));
  }
  // root, leaf, rank-1 node and its leaf, rank-2 node with its leaf, rank-1 child and that child's leaf
  std::vector<NodeId> parent{kNoParent, 0, 0, 2, 0, 4, 4, 6};
  std::vector<Rank> rank{4, 0, 1, 0, 2, 0, 1, 0};
  parent.reserve(n);
  rank.reserve(n);

  auto attach = [&](const RankedTree& gadget) {
    const auto shift = static_cast<NodeId>(parent.size());
    for (NodeId x = 0; x < gadget.size(); ++x) {
      parent.push_back(gadget.is_root(x) ? 0 : gadget.parent(x) + shift);
      rank.push_back(gadget.rank(x));
    }
    return shift + gadget.root();
  };

  FlatTree flat{RankedTree::singleton(), {}, {}, inst.target(), inst.weights};
  for (std::uint64_t w : inst.weights) flat.apple_roots.push_back(attach(make_apple(w)));
  const RankedTree basket = make_basket(inst.target());
  for (std::uint64_t j = 0; j < inst.parts; ++j) flat.basket_roots.push_back(attach(basket));
  flat.tree = RankedTree(std::move(parent), std::move(rank));
  return flat;
}

// Reads the apple -> basket placement off a certificate for a flat tree:
// apple i goes to part j when some step pushes apple root i under basket root j.
inline std::optional<PartitionSolution> extract_solution(const FlatTree& flat, std::span<const PushStep> steps) {
  PartitionSolution sol{std::vector<std::size_t>(flat.apple_roots.size(), SIZE_MAX)};
  for (const PushStep& s : steps) {
    for (std::size_t i = 0; i < flat.apple_roots.size(); ++i) {
      if (flat.apple_roots[i] != s.node) continue;
      const auto it = std::find(flat.basket_roots.begin(), flat.basket_roots.end(), s.target);
      if (it == flat.basket_roots.end() || sol.assignment[i] != SIZE_MAX) return std::nullopt;
      sol.assignment[i] = static_cast<std::size_t>(it - flat.basket_roots.begin());
    }
  }
  for (std::size_t part : sol.assignment) {
    if (part == SIZE_MAX) return std::nullopt;
  }
  return sol;
}

struct ReductionLimits {
  std::size_t max_weights = kDefaultSolverCap;
  std::uint64_t max_nodes = kDefaultFlatTreeCap;
  std::optional<std::uint64_t> budget;
};

struct ReductionReport {
  PartitionInstance instance;
  std::uint64_t nodes = 0;
  std::optional<PartitionSolution> solution;
  Verdict verdict;
  std::optional<bool> certificate_valid;         // set when a certificate was produced
  std::optional<PartitionSolution> extracted;    // set when extraction succeeded
  bool extracted_valid = false;

  bool solvable() const { return solution.has_value(); }
  bool agree() const { return verdict.decided() && verdict.accepted == solvable(); }

  // Line-oriented key=value pairs.
  std::string to_text() const {
    std::ostringstream os;
    os << "instance=" << format_instance(instance) << '\n'
       << "target=" << instance.target() << '\n'
       << "nodes=" << nodes << '\n'
       << "solver=" << (solvable() ? "solvable" : "unsolvable") << '\n';
    if (solution) os << "solver_partition=" << format_parts(*solution) << '\n';
    os << "recognizer=" << (verdict.accepted ? "accepted" : verdict.decided() ? "rejected" : "exhausted") << '\n'
       << "recognizer_reason=" << to_string(verdict.reason) << '\n'
       << "search_steps=" << verdict.search_steps << '\n';
    if (verdict.certificate) os << "certificate_steps=" << verdict.certificate->size() << '\n';
    if (certificate_valid) os << "certificate_valid=" << (*certificate_valid ? "true" : "false") << '\n';
    if (verdict.certificate) {
      os << "extracted_partition=" << (extracted ? format_parts(*extracted) : "none") << '\n'
         << "extracted_valid=" << (extracted_valid ? "true" : "false") << '\n';
    }
    os << "agree=" << (agree() ? "true" : "false") << '\n';
    return os.str();
  }

 private:
  // Weights per part, e.g. "3+4|1+2+4".
  std::string format_parts(const PartitionSolution& sol) const {
    std::string out;
    for (std::uint64_t j = 0; j < instance.parts; ++j) {
      if (j) out += '|';
      bool first = true;
      for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
        if (sol.assignment[i] != j) continue;
        if (!first) out += '+';
        out += std::to_string(instance.weights[i]);
        first = false;
      }
    }
    return out;
  }
};

// Runs the solver and the recognizer on the same instance and cross-checks
// any certificate by replaying it and decoding the partition it encodes.
inline ReductionReport verify_reduction(const PartitionInstance& inst, const ReductionLimits& limits = {}) {
  ReductionReport report;
  report.instance = inst;
  report.solution = solve_partition(inst, limits.max_weights);
  const FlatTree flat = make_flat_tree(inst, limits.max_nodes);
  report.nodes = flat.tree.size();
  report.verdict = is_union_find_tree(flat.tree, {limits.budget});
  if (report.verdict.certificate) {
    report.certificate_valid = check_certificate(flat.tree, *report.verdict.certificate);
    report.extracted = extract_solution(flat, *report.verdict.certificate);
    report.extracted_valid = report.extracted && is_valid_solution(inst, *report.extracted);
  }
  return report;
}

}  // namespace uftree
