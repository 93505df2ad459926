#pragma once

// k-way Partition: split weights a_1..a_m into k groups of equal sum
// B = (a_1 + ... + a_m) / k.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "uftree/error.hpp"
#include "uftree/text_format.hpp"

namespace uftree {

struct PartitionInstance {
  std::vector<std::uint64_t> weights;
  std::uint64_t parts = 0;

  std::uint64_t total() const { return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0}); }
  std::uint64_t target() const { return total() / parts; }

  // Empty string when valid, otherwise the violated invariant.
  std::string defect() const {
    if (weights.empty()) return "no weights";
    if (parts == 0) return "part count must be positive";
    std::uint64_t sum = 0;
    for (std::uint64_t w : weights) {
      if (w == 0) return "weights must be positive";
      if (sum > UINT64_MAX - w) return "weight sum overflows";
      sum += w;
    }
    if (sum % parts != 0) return "weight sum is not divisible by the part count";
    return {};
  }

  void check() const {
    if (auto d = defect(); !d.empty()) throw PreconditionError("partition instance: " + d);
  }

  friend bool operator==(const PartitionInstance&, const PartitionInstance&) = default;
};

// assignment[i] is the part (0..k-1) receiving weight i.
struct PartitionSolution {
  std::vector<std::size_t> assignment;
};

inline bool is_valid_solution(const PartitionInstance& inst, const PartitionSolution& sol) {
  if (sol.assignment.size() != inst.weights.size()) return false;
  std::vector<std::uint64_t> load(inst.parts, 0);
  for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
    if (sol.assignment[i] >= inst.parts) return false;
    load[sol.assignment[i]] += inst.weights[i];
  }
  const std::uint64_t b = inst.target();
  return std::all_of(load.begin(), load.end(), [b](std::uint64_t l) { return l == b; });
}

// "a1,a2,...,am;k". Surrounding whitespace is ignored.
inline PartitionInstance parse_instance(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  const auto halves = detail::split_fields(text, ';');
  if (halves.size() != 2) throw ParseError(1, "expected \"a1,a2,...,am;k\"");
  PartitionInstance inst;
  for (std::string_view w : detail::split_fields(halves[0], ',')) {
    std::uint64_t v = 0;
    if (!detail::parse_int(w, v)) throw ParseError(1, "bad weight \"" + std::string(w) + "\"");
    inst.weights.push_back(v);
  }
  if (!detail::parse_int(halves[1], inst.parts)) throw ParseError(1, "bad part count");
  if (auto d = inst.defect(); !d.empty()) throw ParseError(1, d);
  return inst;
}

inline std::string format_instance(const PartitionInstance& inst) {
  std::string out;
  for (std::size_t i = 0; i < inst.weights.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(inst.weights[i]);
  }
  return out + ';' + std::to_string(inst.parts);
}

inline constexpr std::size_t kDefaultSolverCap = 20;

namespace detail {

class PartitionSolver {
 public:
  explicit PartitionSolver(const PartitionInstance& inst)
      : inst_(inst), order_(inst.weights.size()), residual_(inst.parts, inst.target()),
        assignment_(inst.weights.size(), 0) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return inst.weights[a] > inst.weights[b]; });
  }

  std::optional<PartitionSolution> run() {
    if (!place(0)) return std::nullopt;
    return PartitionSolution{assignment_};
  }

 private:
  bool place(std::size_t pos) {
    if (pos == order_.size()) return true;
    std::string key = state_key(pos);
    if (failed_.count(key)) return false;
    const std::uint64_t w = inst_.weights[order_[pos]];
    for (std::size_t j = 0; j < residual_.size(); ++j) {
      if (residual_[j] < w) continue;
      // parts with equal residual capacity are interchangeable
      bool repeat = false;
      for (std::size_t i = 0; i < j && !repeat; ++i) repeat = residual_[i] == residual_[j];
      if (repeat) continue;
      residual_[j] -= w;
      assignment_[order_[pos]] = j;
      if (place(pos + 1)) return true;
      residual_[j] += w;
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::string state_key(std::size_t pos) const {
    std::vector<std::uint64_t> sorted = residual_;
    std::sort(sorted.begin(), sorted.end());
    std::string key = std::to_string(pos);
    for (std::uint64_t r : sorted) key += ',' + std::to_string(r);
    return key;
  }

  const PartitionInstance& inst_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> residual_;
  std::vector<std::size_t> assignment_;
  std::unordered_set<std::string> failed_;
};

}  // namespace detail

// Exhaustive search with memoization on (position, sorted residual
// capacities). Returns nullopt when the instance has no solution.
inline std::optional<PartitionSolution> solve_partition(const PartitionInstance& inst,
                                                        std::size_t max_weights = kDefaultSolverCap) {
  inst.check();
  if (inst.weights.size() > max_weights) {
    throw CapExceeded("solver: " + std::to_string(inst.weights.size()) + " weights exceeds cap " +
                      std::to_string(max_weights));
  }
  // some part would stay empty while B >= 1
  if (inst.parts > inst.weights.size()) return std::nullopt;
  return detail::PartitionSolver(inst).run();
}

}  // namespace uftree
