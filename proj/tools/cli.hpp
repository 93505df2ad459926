#pragma once

// The uftree command line. run() is the whole program minus process setup,
// so tests drive it in-process with string streams.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uftree/certificate_text.hpp"
#include "uftree/uftree.hpp"

namespace uftree::cli {

enum Exit : int { kOk = 0, kNo = 1, kInput = 2, kCap = 3 };

inline constexpr std::uint64_t kDefaultMaxNodes = 100000;

namespace detail {

inline std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  buf << f.rdbuf();
  return buf.str();
}

// Writes to `path`, or to standard output when path is empty or "-".
inline void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << data)) throw Error("cannot write " + path);
}

// An instance argument is a file path when such a file exists, otherwise
// literal text like "1,2,3,4,4;2".
inline PartitionInstance load_instance(const std::string& arg, std::istream& in) {
  if (arg == "-" || (arg.find(';') == std::string::npos && std::filesystem::is_regular_file(arg))) {
    return parse_instance(slurp(arg, in));
  }
  return parse_instance(arg);
}

inline ParsedTree load_tree(const std::string& path, std::istream& in, std::uint64_t max_nodes) {
  ParsedTree parsed = parse_tree(slurp(path, in));
  if (parsed.tree.size() > max_nodes) {
    throw CapExceeded(std::to_string(parsed.tree.size()) + " nodes exceed --max-nodes " + std::to_string(max_nodes));
  }
  return parsed;
}

// Maps a certificate in file ids onto dense node ids; nullopt when it names
// an id the tree does not have.
inline std::optional<Certificate> to_dense(const CertificateText& text, const ParsedTree& parsed) {
  const auto& ids = parsed.original_ids;
  auto dense = [&](std::uint64_t id) -> std::optional<NodeId> {
    const auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<NodeId>(it - ids.begin());
  };
  Certificate cert;
  for (auto [x, y] : text.pushes) {
    const auto a = dense(x);
    const auto b = dense(y);
    if (!a || !b) return std::nullopt;
    cert.push_back({*a, *b});
  }
  return cert;
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("UFTREE_SEED")) {
    std::uint64_t seed = 0;
    if (uftree::detail::parse_int(std::string_view(env), seed)) return seed;
  }
  return 1;
}

inline std::string partition_text(const PartitionInstance& inst, const PartitionSolution& sol) {
  std::string out;
  for (std::size_t p = 0; p < inst.parts; ++p) {
    if (p) out += '|';
    bool first = true;
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
      if (sol.assignment[i] != p) continue;
      if (!first) out += '+';
      out += std::to_string(inst.weights[i]);
      first = false;
    }
  }
  return out;
}

}  // namespace detail

// Runs one command line (args excludes the program name) and returns the
// exit status.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Union-Find tree recognition and the Partition reduction", "uftree"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> max_nodes;
  app.add_option("--max-nodes", max_nodes,
                 "Node cap (default 100000 for parsing and filters, 10 for the oracle)");

  std::string file;
  std::string instance;
  std::string output;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = detail::default_seed();

  auto* check = app.add_subcommand("check", "Decide whether a tree is a Union or Union-Find tree");
  std::string mode = "union-find";
  bool emit_certificate = false;
  std::string certificate_file;
  check->add_option("file", file, "Tree file, - for stdin")->required();
  check->add_option("--mode", mode, "union or union-find")->check(CLI::IsMember({"union", "union-find"}));
  check->add_flag("--emit-certificate", emit_certificate, "Write the push certificate to stdout");
  check->add_option("--certificate", certificate_file, "Replay this certificate instead of searching");
  check->add_option("--budget", budget, "Search node budget");

  auto* reduce = app.add_subcommand("reduce", "Build the flat tree of a Partition instance");
  reduce->add_option("instance", instance, "Instance text a1,...,am;k or a file")->required();
  reduce->add_option("-o,--output", output, "Output file");

  std::size_t max_weights = kDefaultSolverCap;
  auto* solve = app.add_subcommand("solve", "Solve a Partition instance");
  solve->add_option("instance", instance, "Instance text a1,...,am;k or a file")->required();
  solve->add_option("--max-weights", max_weights, "Solver cap on the number of weights");

  auto* verify = app.add_subcommand("verify", "Compare the solver with the recognizer on the flat tree");
  verify->add_option("instance", instance, "Instance text a1,...,am;k or a file")->required();
  verify->add_option("--budget", budget, "Search node budget");
  verify->add_option("--max-weights", max_weights, "Solver cap on the number of weights");

  auto* gen = app.add_subcommand("gen", "Generate a tree");
  std::string kind;
  std::uint64_t count = 0;
  double collapse_prob = 0.3;
  gen->add_option("kind", kind, "uf, union or mutant")->required()->check(CLI::IsMember({"uf", "union", "mutant"}));
  gen->add_option("n", count, "Node count")->required();
  gen->add_option("--seed", seed, "Random seed (default $UFTREE_SEED or 1)");
  gen->add_option("--collapse-prob", collapse_prob, "Chance of a path compression per step")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("-o,--output", output, "Output file");

  auto* oracle = app.add_subcommand("oracle", "Brute-force Union-Find decision for small trees");
  oracle->add_option("file", file, "Tree file, - for stdin")->required();

  auto* dot = app.add_subcommand("dot", "Export a tree as Graphviz DOT");
  dot->add_option("file", file, "Tree file, - for stdin")->required();
  dot->add_option("-o,--output", output, "Output file");

  auto* bench = app.add_subcommand("bench", "Smoke benchmark of the forest and the recognizer");
  std::uint64_t bench_elements = 100000;
  std::uint64_t bench_trees = 200;
  std::uint64_t bench_tree_nodes = 200;
  bench->add_option("--elements", bench_elements, "Forest size for the replay run");
  bench->add_option("--trees", bench_trees, "Random Union-Find trees to recognize");
  bench->add_option("--tree-nodes", bench_tree_nodes, "Nodes per random tree");
  bench->add_option("--seed", seed, "Random seed (default $UFTREE_SEED or 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  const std::uint64_t node_cap = max_nodes.value_or(kDefaultMaxNodes);
  try {
    if (*check) {
      const ParsedTree parsed = detail::load_tree(file, in, node_cap);
      const RankedTree& t = parsed.tree;
      const auto& ids = parsed.original_ids;
      if (!certificate_file.empty()) {
        const CertificateText text = parse_certificate(detail::slurp(certificate_file, in));
        const auto cert = detail::to_dense(text, parsed);
        const bool ok = text.nodes == t.size() && cert && check_certificate(t, *cert);
        out << (ok ? "valid\n" : "invalid\n");
        return ok ? kOk : kNo;
      }
      if (mode == "union") {
        const auto bad = first_union_violation(t);
        if (!bad) {
          out << "accepted union-tree\n";
          if (emit_certificate) err << "certificate: empty\n";
          return kOk;
        }
        out << "rejected union-condition " << ids[*bad] << "\n";
        return kNo;
      }
      const Verdict v = is_union_find_tree(t, {.budget = budget});
      const std::string line = std::string(v.accepted ? "accepted " : v.decided() ? "rejected " : "undecided ") +
                               to_string(v.reason) + "\n";
      if (emit_certificate) {
        err << line;
        if (v.accepted) out << format_certificate(t.size(), v.steps(), ids);
      } else {
        out << line;
      }
      if (!v.decided()) {
        err << "search budget of " << *budget << " steps exhausted\n";
        return kCap;
      }
      return v.accepted ? kOk : kNo;
    }

    if (*reduce) {
      const PartitionInstance inst = detail::load_instance(instance, in);
      const FlatTree flat = make_flat_tree(inst, node_cap);
      detail::emit(output, serialize_tree(flat.tree), out);
      return kOk;
    }

    if (*solve) {
      const PartitionInstance inst = detail::load_instance(instance, in);
      const auto sol = solve_partition(inst, max_weights);
      if (!sol) {
        out << "unsolvable\n";
        return kNo;
      }
      out << detail::partition_text(inst, *sol) << "\n";
      return kOk;
    }

    if (*verify) {
      const PartitionInstance inst = detail::load_instance(instance, in);
      const ReductionReport report = verify_reduction(inst, {max_weights, node_cap, budget});
      out << report.to_text();
      if (!report.verdict.decided()) {
        err << "recognizer budget exhausted\n";
        return kCap;
      }
      return report.agree() ? kOk : kNo;
    }

    if (*gen) {
      if (count == 0) throw PreconditionError("n must be positive");
      if (count > node_cap) {
        throw CapExceeded(std::to_string(count) + " nodes exceed --max-nodes " + std::to_string(node_cap));
      }
      RankedTree t = random_uf_tree(count, seed, kind == "union" ? 0.0 : collapse_prob);
      if (kind == "mutant") t = mutate(t, seed);
      detail::emit(output, serialize_tree(t), out);
      return kOk;
    }

    if (*oracle) {
      const std::uint64_t cap = max_nodes.value_or(kDefaultOracleCap);
      const ParsedTree parsed = detail::load_tree(file, in, std::max(cap, kDefaultMaxNodes));
      const bool uf = brute_force_is_uf(parsed.tree, cap);
      out << (uf ? "accepted\n" : "rejected\n");
      return uf ? kOk : kNo;
    }

    if (*dot) {
      const ParsedTree parsed = detail::load_tree(file, in, node_cap);
      detail::emit(output, export_dot(parsed.tree), out);
      return kOk;
    }

    if (*bench) {
      using clock = std::chrono::steady_clock;
      auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
      };
      const std::size_t elements = std::max<std::uint64_t>(bench_elements, 1);
      const OpLog log = random_oplog(elements, 4 * elements, seed, 0.5);
      auto t0 = clock::now();
      const Forest f = replay(log);
      auto t1 = clock::now();
      out << "replay elements=" << elements << " ops=" << log.size() - 1 << " roots="
          << export_trees(f).size() << " ms=" << ms(t0, t1) << "\n";

      std::size_t accepted = 0;
      std::uint64_t steps = 0;
      t0 = clock::now();
      for (std::uint64_t i = 0; i < bench_trees; ++i) {
        const Verdict v = is_union_find_tree(random_uf_tree(std::max<std::uint64_t>(bench_tree_nodes, 1), seed + i, 0.3));
        accepted += v.accepted;
        steps += v.search_steps;
      }
      t1 = clock::now();
      out << "recognize trees=" << bench_trees << " nodes=" << bench_tree_nodes << " accepted=" << accepted
          << " search_steps=" << steps << " ms=" << ms(t0, t1) << "\n";
      return accepted == bench_trees ? kOk : kNo;
    }
  } catch (const CapExceeded& e) {
    err << "uftree: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    err << "uftree: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

}  // namespace uftree::cli
