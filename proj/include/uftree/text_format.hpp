#pragma once

// Text encodings of ranked trees.
//
// Tree format: optional "#" comment lines, then a line with the node count n,
// then exactly n lines "id parent rank" sorted by id, single-space separated,
// parent -1 marking the root. Ids may be any increasing nonnegative integers;
// parsing re-densifies them to 0..n-1.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uftree/tree.hpp"

namespace uftree {

struct ParsedTree {
  RankedTree tree;
  // original_ids[i] is the id node i carried in the input.
  std::vector<std::uint64_t> original_ids;
};

namespace detail {

// Splits on '\n'. A trailing newline does not produce an empty last line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find(sep, start);
    out.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty() || s.front() == '+') return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

inline ParsedTree parse_tree(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && !lines[i].empty() && lines[i].front() == '#') ++i;
  if (i == lines.size()) throw ParseError(0, "missing node count header");

  std::uint64_t n = 0;
  if (!detail::parse_int(lines[i], n)) throw ParseError(i + 1, "node count is not a decimal integer");
  if (n == 0) throw ParseError(i + 1, "node count must be positive");
  if (n > kNoParent - 1) throw ParseError(i + 1, "node count too large");
  const std::size_t header = i++;
  if (lines.size() - i < n) throw ParseError(lines.size() + 1, "expected " + std::to_string(n) + " node lines");

  std::vector<std::uint64_t> ids(n);
  std::vector<std::int64_t> parent_ids(n);
  std::vector<std::uint64_t> ranks(n);
  for (std::size_t k = 0; k < n; ++k, ++i) {
    const auto fields = detail::split_fields(lines[i], ' ');
    if (fields.size() != 3) throw ParseError(i + 1, "expected \"id parent rank\"");
    if (!detail::parse_int(fields[0], ids[k])) throw ParseError(i + 1, "bad node id");
    if (!detail::parse_int(fields[1], parent_ids[k]) || parent_ids[k] < -1) {
      throw ParseError(i + 1, "bad parent id");
    }
    if (!detail::parse_int(fields[2], ranks[k])) throw ParseError(i + 1, "bad rank");
    if (k > 0 && ids[k] <= ids[k - 1]) throw ParseError(i + 1, "node ids must be strictly increasing");
  }
  for (; i < lines.size(); ++i) {
    if (!lines[i].empty()) throw ParseError(i + 1, "trailing content after node lines");
  }

  std::unordered_map<std::uint64_t, NodeId> dense;
  dense.reserve(n);
  for (std::size_t k = 0; k < n; ++k) dense.emplace(ids[k], static_cast<NodeId>(k));

  std::vector<NodeId> parent(n);
  std::vector<Rank> rank(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t line = header + 2 + k;
    if (parent_ids[k] == -1) {
      parent[k] = kNoParent;
    } else {
      const auto it = dense.find(static_cast<std::uint64_t>(parent_ids[k]));
      if (it == dense.end()) throw InvalidTree("line " + std::to_string(line) + ": parent id out of range");
      parent[k] = it->second;
    }
    rank[k] = ranks[k] > kMaxRank ? kMaxRank + 1 : static_cast<Rank>(ranks[k]);
  }
  const TreeCheck check = validate(parent, rank);
  if (!check.ok()) {
    std::string msg = to_string(check.defect);
    if (check.node != kNoParent) {
      msg += " at node " + std::to_string(ids[check.node]) + " (line " +
             std::to_string(header + 2 + check.node) + ")";
    }
    throw InvalidTree(msg);
  }
  return {RankedTree(std::move(parent), std::move(rank)), std::move(ids)};
}

inline std::string serialize_tree(const RankedTree& t) {
  std::string out = std::to_string(t.size()) + "\n";
  for (NodeId x = 0; x < t.size(); ++x) {
    out += std::to_string(x);
    out += t.is_root(x) ? " -1 " : " " + std::to_string(t.parent(x)) + " ";
    out += std::to_string(t.rank(x));
    out += '\n';
  }
  return out;
}

// One digraph, edges child -> parent, nodes labelled "id:rank".
inline std::string export_dot(const RankedTree& t, std::string_view name = "tree") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (NodeId x = 0; x < t.size(); ++x) {
    os << "  n" << x << " [label=\"" << x << ':' << t.rank(x) << "\"];\n";
  }
  for (NodeId x = 0; x < t.size(); ++x) {
    if (!t.is_root(x)) os << "  n" << x << " -> n" << t.parent(x) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace uftree
