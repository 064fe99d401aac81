#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ystruct/graph.hpp"

namespace ystruct {

inline constexpr std::size_t kMaxEnumerationNodes = 5;
inline constexpr std::size_t kMaxPartitionNodes = 4;

// Visits every labeled DAG on `node_names` exactly once. Each unordered pair
// (i, j), i < j in declaration order, takes one of three states: absent,
// i->j, j->i. Candidates are walked in lexicographic order of that state
// vector (first pair most significant) and cyclic ones are skipped, so index
// 0 is always the empty graph. Throws InvalidArgument outside 1..5 nodes.
void for_each_dag(const std::vector<std::string>& node_names,
                  const std::function<void(const Dag&)>& visit);

std::vector<Dag> enumerate_dags(const std::vector<std::string>& node_names);

// Verma-Pearl: same vertices, same adjacencies, same unshielded colliders.
// Throws InvalidArgument when the node sets differ.
bool markov_equivalent(const Dag& g1, const Dag& g2);

struct EquivClass {
  std::vector<Dag> members;  // in enumeration order
  Dag representative;        // first member in enumeration order
  std::vector<std::size_t> member_indices;  // positions in enumerate_dags()
};

// Partition of enumerate_dags(node_names) under markov_equivalent, sorted by
// the representative's enumeration index. 1..4 nodes.
std::vector<EquivClass> equivalence_classes(const std::vector<std::string>& node_names);

}  // namespace ystruct
