#include "ystruct/equivalence.hpp"

#include <map>

#include "ystruct/error.hpp"

namespace ystruct {
namespace {

// Reachability closure check on an adjacency bitmask (n <= 5).
bool acyclic(const std::vector<unsigned>& children_mask) {
  const std::size_t n = children_mask.size();
  std::vector<unsigned> reach = children_mask;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i] >> k & 1U) reach[i] |= reach[k];
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i] >> i & 1U) return false;
  return true;
}

// Skeleton plus unshielded colliders, keyed by name so that two DAGs with
// different declaration orders still compare.
struct EquivalenceKey {
  std::set<std::pair<std::string, std::string>> adjacencies;
  std::vector<Collider> colliders;

  friend bool operator==(const EquivalenceKey&, const EquivalenceKey&) = default;
  friend auto operator<=>(const EquivalenceKey&, const EquivalenceKey&) = default;
};

EquivalenceKey key_of(const Dag& g) {
  EquivalenceKey key;
  for (const auto& e : g.edges()) {
    if (e.parent < e.child)
      key.adjacencies.emplace(e.parent, e.child);
    else
      key.adjacencies.emplace(e.child, e.parent);
  }
  key.colliders = unshielded_colliders(g);
  return key;
}

}  // namespace

void for_each_dag(const std::vector<std::string>& node_names,
                  const std::function<void(const Dag&)>& visit) {
  const std::size_t n = node_names.size();
  if (n < 1 || n > kMaxEnumerationNodes)
    throw InvalidArgument("DAG enumeration supports 1.." + std::to_string(kMaxEnumerationNodes) +
                          " nodes, got " + std::to_string(n));
  Dag probe(node_names);  // validates names

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<int> state(pairs.size(), 0);
  std::vector<unsigned> children_mask(n);
  for (;;) {
    std::fill(children_mask.begin(), children_mask.end(), 0U);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      if (state[p] == 1) children_mask[i] |= 1U << j;
      if (state[p] == 2) children_mask[j] |= 1U << i;
    }
    if (acyclic(children_mask)) {
      Dag g(node_names);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        if (state[p] == 1) g.add_edge(i, j);
        if (state[p] == 2) g.add_edge(j, i);
      }
      visit(g);
    }
    // Odometer increment; last pair is the least significant digit.
    std::size_t p = pairs.size();
    while (p > 0) {
      --p;
      if (++state[p] < 3) break;
      state[p] = 0;
      if (p == 0) return;
    }
    if (pairs.empty()) return;
  }
}

std::vector<Dag> enumerate_dags(const std::vector<std::string>& node_names) {
  std::vector<Dag> out;
  for_each_dag(node_names, [&](const Dag& g) { out.push_back(g); });
  return out;
}

bool markov_equivalent(const Dag& g1, const Dag& g2) {
  if (g1.node_set() != g2.node_set())
    throw InvalidArgument("markov_equivalent needs DAGs over the same node set");
  return key_of(g1) == key_of(g2);
}

std::vector<EquivClass> equivalence_classes(const std::vector<std::string>& node_names) {
  if (node_names.size() < 1 || node_names.size() > kMaxPartitionNodes)
    throw InvalidArgument("equivalence partition supports 1.." +
                          std::to_string(kMaxPartitionNodes) + " nodes");
  std::vector<EquivClass> classes;
  std::map<EquivalenceKey, std::size_t> slot;
  std::size_t index = 0;
  for_each_dag(node_names, [&](const Dag& g) {
    auto [it, inserted] = slot.emplace(key_of(g), classes.size());
    if (inserted) classes.push_back(EquivClass{{}, g, {}});
    auto& cls = classes[it->second];
    cls.members.push_back(g);
    cls.member_indices.push_back(index++);
  });
  return classes;
}

}  // namespace ystruct
