// Encodes a Partition instance as a flat tree, recognizes it, and reads the
// partition back out of the push certificate.
//
//   reduce_partition "1,2,3,4,4;2"

#include <iostream>

#include "uftree/uftree.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: reduce_partition INSTANCE\n";
    return 2;
  }
  try {
    const uftree::PartitionInstance inst = uftree::parse_instance(argv[1]);
    const uftree::FlatTree flat = uftree::make_flat_tree(inst);
    std::cout << "flat tree: " << flat.tree.size() << " nodes, basket size " << flat.basket_size << "\n";

    const uftree::Verdict v = uftree::is_union_find_tree(flat.tree);
    if (!v.accepted) {
      std::cout << "rejected (" << uftree::to_string(v.reason) << "): no partition\n";
      return 1;
    }
    std::cout << "accepted with " << v.steps().size() << " pushes\n";
    const auto sol = uftree::extract_solution(flat, v.steps());
    if (!sol) return 1;
    for (std::size_t p = 0; p < inst.parts; ++p) {
      std::cout << "basket " << p << ":";
      for (std::size_t i = 0; i < inst.weights.size(); ++i) {
        if (sol->assignment[i] == p) std::cout << " " << inst.weights[i];
      }
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
