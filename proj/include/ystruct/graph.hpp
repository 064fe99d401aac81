#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ystruct {

using NodeId = std::size_t;

// Set of variable names. std::set keeps the lexicographic order that every
// canonical form in this library relies on.
using NodeSet = std::set<std::string>;

struct Edge {
  std::string parent;
  std::string child;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Labeled directed acyclic graph over named variables.
//
// Nodes keep their declaration order (which fixes NodeId values); edges are
// validated on insertion so an instance is always acyclic, loop-free and
// free of duplicate edges.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::vector<std::string> nodes);
  Dag(std::vector<std::string> nodes, std::span<const Edge> edges);

  void add_edge(std::string_view parent, std::string_view child);
  void add_edge(NodeId parent, NodeId child);

  std::size_t size() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::string>& nodes() const { return names_; }
  const std::string& name(NodeId id) const { return names_.at(id); }

  bool has_node(std::string_view name) const { return find(name).has_value(); }
  std::optional<NodeId> find(std::string_view name) const;
  // Throws GraphError for unknown names.
  NodeId index(std::string_view name) const;

  bool has_edge(NodeId parent, NodeId child) const;
  bool adjacent(NodeId a, NodeId b) const { return has_edge(a, b) || has_edge(b, a); }
  const std::vector<NodeId>& parents(NodeId id) const { return parents_.at(id); }
  const std::vector<NodeId>& children(NodeId id) const { return children_.at(id); }

  // Edges sorted by (parent name, child name).
  std::vector<Edge> edges() const;

  std::vector<NodeId> topological_order() const;

  // Membership mask of `seeds` plus all of their ancestors.
  std::vector<bool> ancestral_closure(std::span<const NodeId> seeds) const;
  // Strict descendants of `id` (not including `id`).
  std::vector<bool> descendants(NodeId id) const;
  // True iff a directed path of length >= 1 runs from `a` to `b`.
  bool is_ancestor(NodeId a, NodeId b) const;

  NodeSet node_set() const { return NodeSet(names_.begin(), names_.end()); }

  // Same node set and same edge set, compared by name.
  friend bool operator==(const Dag& lhs, const Dag& rhs);

 private:
  bool reaches(NodeId from, NodeId to) const;

  std::vector<std::string> names_;
  std::map<std::string, NodeId, std::less<>> index_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::size_t edge_count_ = 0;
};

// Text form "A->B, C->B" with nodes listed first; used in diagnostics and the
// plain-text reports.
std::string to_string(const Dag& g);

// ---------------------------------------------------------------------------
// d-separation

// A conditional independence statement a _||_ b | cond, canonicalized a < b.
struct SepTriple {
  std::string a;
  std::string b;
  NodeSet cond;

  friend auto operator<=>(const SepTriple&, const SepTriple&) = default;
};

using DSepSignature = std::set<SepTriple>;

// Index-level query. `conditioned` is a membership mask of size g.size().
// No precondition checks; the name-based overload validates.
bool d_separated(const Dag& g, NodeId a, NodeId b, const std::vector<bool>& conditioned);

// Throws GraphError for unknown names and InvalidArgument when a == b or
// either endpoint is in `cond`.
bool d_separated(const Dag& g, std::string_view a, std::string_view b, const NodeSet& cond);

// All (a, b, C) with a, b in `vars`, C a subset of vars \ {a, b}, for which
// a and b are d-separated given C. Nodes of g outside `vars` act as latent
// variables: they carry paths but never appear in a triple.
DSepSignature d_separation_signature(const Dag& g, const NodeSet& vars);
DSepSignature d_separation_signature(const Dag& g);

std::string to_string(const SepTriple& t);

// ---------------------------------------------------------------------------
// Structural patterns

// Parents, children and the children's other parents.
NodeSet graphical_markov_blanket(const Dag& g, std::string_view x);

struct Collider {
  std::string a;
  std::string x;
  std::string b;

  friend auto operator<=>(const Collider&, const Collider&) = default;
};

// Every a -> x <- b with a, b non-adjacent, canonicalized a < b; sorted.
std::vector<Collider> unshielded_colliders(const Dag& g);

enum class TetradKind { YStructure, NearY, Other };

struct TetradClass {
  TetradKind kind = TetradKind::Other;
  // Role labels; empty for Other. w1 < w2 lexicographically.
  std::string w1;
  std::string w2;
  std::string x;
  std::string z;
};

// Classifies a four-node DAG as a Y structure (w1->x<-w2, x->z and nothing
// else), a Near-Y structure (the same plus exactly one of w1->z, w2->z) or
// neither. Throws InvalidArgument when g does not have exactly four nodes.
TetradClass classify_tetrad(const Dag& g);

}  // namespace ystruct
