#pragma once

// Instrumented Disjoint-Set forest: union-by-rank with full path compression.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uftree/text_format.hpp"
#include "uftree/tree.hpp"

namespace uftree {

using Element = std::uint32_t;

class Forest {
 public:
  Forest() = default;
  explicit Forest(std::size_t n) { make_sets(n); }

  // Appends n singleton sets.
  void make_sets(std::size_t n) {
    const std::size_t base = parent_.size();
    if (base + n >= kNoParent) throw PreconditionError("forest: too many elements");
    parent_.resize(base + n);
    rank_.resize(base + n, 0);
    for (std::size_t i = base; i < base + n; ++i) parent_[i] = static_cast<Element>(i);
  }

  std::size_t size() const noexcept { return parent_.size(); }
  Element parent(Element x) const { return parent_.at(x); }
  Rank rank(Element x) const { return rank_.at(x); }
  bool is_root(Element x) const { return parent_.at(x) == x; }

  // Root lookup that reattaches every element on the path to the root.
  Element find(Element x) {
    check(x);
    Element root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const Element next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Root lookup without compression.
  Element find_root(Element x) const {
    check(x);
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  // Union by rank. On equal ranks the root of b goes under the root of a and
  // a's root gains a rank. Returns false when a and b were already joined.
  bool unite(Element a, Element b) {
    Element ra = find(a);
    Element rb = find(b);
    if (ra == rb) return false;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  void check(Element x) const {
    if (x >= parent_.size()) throw PreconditionError("forest: element " + std::to_string(x) + " out of range");
  }

  std::vector<Element> parent_;
  std::vector<Rank> rank_;
};

namespace op {
struct MakeSets {
  std::size_t count;
  friend bool operator==(const MakeSets&, const MakeSets&) = default;
};
struct Union {
  Element a, b;
  friend bool operator==(const Union&, const Union&) = default;
};
struct Find {
  Element a;
  friend bool operator==(const Find&, const Find&) = default;
};
}  // namespace op

using Operation = std::variant<op::MakeSets, op::Union, op::Find>;
using OpLog = std::vector<Operation>;

// "makeset n" / "union a b" / "find a", one per line. Blank lines and lines
// starting with '#' are skipped.
inline OpLog parse_oplog(std::string_view text) {
  OpLog log;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const auto f = detail::split_fields(line, ' ');
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (f[0] == "makeset" && f.size() == 2 && detail::parse_int(f[1], a)) {
      log.push_back(op::MakeSets{static_cast<std::size_t>(a)});
    } else if (f[0] == "union" && f.size() == 3 && detail::parse_int(f[1], a) && detail::parse_int(f[2], b) &&
               a < kNoParent && b < kNoParent) {
      log.push_back(op::Union{static_cast<Element>(a), static_cast<Element>(b)});
    } else if (f[0] == "find" && f.size() == 2 && detail::parse_int(f[1], a) && a < kNoParent) {
      log.push_back(op::Find{static_cast<Element>(a)});
    } else {
      throw ParseError(i + 1, "expected \"makeset n\", \"union a b\" or \"find a\"");
    }
  }
  return log;
}

inline std::string serialize_oplog(const OpLog& log) {
  std::string out;
  for (const Operation& o : log) {
    if (const auto* m = std::get_if<op::MakeSets>(&o)) {
      out += "makeset " + std::to_string(m->count) + "\n";
    } else if (const auto* u = std::get_if<op::Union>(&o)) {
      out += "union " + std::to_string(u->a) + " " + std::to_string(u->b) + "\n";
    } else {
      out += "find " + std::to_string(std::get<op::Find>(o).a) + "\n";
    }
  }
  return out;
}

// Runs a log on a fresh forest. The log must open with a makeset.
inline Forest replay(const OpLog& log) {
  if (log.empty() || !std::holds_alternative<op::MakeSets>(log.front())) {
    throw PreconditionError("oplog must start with makeset");
  }
  Forest f;
  for (const Operation& o : log) {
    if (const auto* m = std::get_if<op::MakeSets>(&o)) {
      f.make_sets(m->count);
    } else if (const auto* u = std::get_if<op::Union>(&o)) {
      f.unite(u->a, u->b);
    } else {
      f.find(std::get<op::Find>(o).a);
    }
  }
  return f;
}

struct ExportedTree {
  RankedTree tree;
  // elements[i] is the forest element behind node i.
  std::vector<Element> elements;
};

// One tree per root, in increasing root order. Node ids follow element order.
inline std::vector<ExportedTree> export_trees(const Forest& f) {
  const std::size_t n = f.size();
  std::vector<Element> root_of(n);
  std::vector<std::size_t> tree_of_root(n, SIZE_MAX);
  std::vector<std::vector<Element>> members;
  for (Element x = 0; x < n; ++x) {
    if (f.is_root(x)) {
      tree_of_root[x] = members.size();
      members.emplace_back();
    }
  }
  std::vector<NodeId> local(n);
  for (Element x = 0; x < n; ++x) {
    root_of[x] = f.find_root(x);
    auto& m = members[tree_of_root[root_of[x]]];
    local[x] = static_cast<NodeId>(m.size());
    m.push_back(x);
  }
  std::vector<ExportedTree> out;
  out.reserve(members.size());
  for (auto& m : members) {
    std::vector<NodeId> parent;
    std::vector<Rank> rank;
    parent.reserve(m.size());
    rank.reserve(m.size());
    for (Element x : m) {
      parent.push_back(f.is_root(x) ? kNoParent : local[f.parent(x)]);
      rank.push_back(f.rank(x));
    }
    out.push_back({RankedTree(std::move(parent), std::move(rank)), std::move(m)});
  }
  return out;
}

}  // namespace uftree
