// Replays a union/find log and reports every resulting tree.
//
//   replay_oplog data/compress.oplog

#include <fstream>
#include <iostream>
#include <sstream>

#include "uftree/uftree.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: replay_oplog LOG\n";
    return 2;
  }
  std::ifstream f(argv[1]);
  if (!f) {
    std::cerr << "cannot read " << argv[1] << "\n";
    return 2;
  }
  std::stringstream text;
  text << f.rdbuf();

  try {
    const uftree::Forest forest = uftree::replay(uftree::parse_oplog(text.str()));
    for (const auto& [tree, elements] : uftree::export_trees(forest)) {
      const uftree::Verdict v = uftree::is_union_find_tree(tree);
      std::cout << "tree of " << tree.size() << " elements rooted at " << elements[tree.root()]
                << ": rank " << tree.rank() << ", height " << tree.height() << ", "
                << (uftree::is_union_tree(tree) ? "union tree" : "not a union tree") << ", "
                << uftree::to_string(v.reason) << "\n";
      if (!v.accepted) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
