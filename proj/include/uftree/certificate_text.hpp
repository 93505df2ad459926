#pragma once

// Certificate text: a header line with the node count, then one
// "push x y" line per step, x moving under its sibling y.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uftree/error.hpp"
#include "uftree/recognizer.hpp"
#include "uftree/text_format.hpp"

namespace uftree {

struct CertificateText {
  std::uint64_t nodes = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pushes;  // (x, y) in file ids
};

// ids[i] is the id written for node i; empty means node ids as they are.
inline std::string format_certificate(std::size_t nodes, std::span<const PushStep> steps,
                                      std::span<const std::uint64_t> ids = {}) {
  auto id = [&](NodeId x) { return ids.empty() ? std::uint64_t{x} : ids[x]; };
  std::string out = std::to_string(nodes) + "\n";
  for (const PushStep& s : steps) {
    out += "push " + std::to_string(id(s.node)) + " " + std::to_string(id(s.target)) + "\n";
  }
  return out;
}

inline CertificateText parse_certificate(std::string_view text) {
  const auto lines = detail::split_lines(text);
  CertificateText cert;
  std::size_t i = 0;
  while (i < lines.size() && !lines[i].empty() && lines[i].front() == '#') ++i;
  if (i == lines.size() || !detail::parse_int(lines[i], cert.nodes)) {
    throw ParseError(i + 1, "expected node count");
  }
  for (++i; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = detail::split_fields(lines[i], ' ');
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    if (f.size() != 3 || f[0] != "push" || !detail::parse_int(f[1], x) || !detail::parse_int(f[2], y)) {
      throw ParseError(i + 1, "expected \"push x y\"");
    }
    cert.pushes.emplace_back(x, y);
  }
  return cert;
}

}  // namespace uftree
