#include "ystruct/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ystruct/error.hpp"

namespace ystruct {

Dag::Dag(std::vector<std::string> nodes) : names_(std::move(nodes)) {
  parents_.resize(names_.size());
  children_.resize(names_.size());
  for (NodeId i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw GraphError("empty node name");
    if (!index_.emplace(names_[i], i).second)
      throw GraphError("duplicate node name '" + names_[i] + "'");
  }
}

Dag::Dag(std::vector<std::string> nodes, std::span<const Edge> edges) : Dag(std::move(nodes)) {
  for (const auto& e : edges) add_edge(e.parent, e.child);
}

std::optional<NodeId> Dag::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Dag::index(std::string_view name) const {
  auto id = find(name);
  if (!id) throw GraphError("unknown node '" + std::string(name) + "'");
  return *id;
}

void Dag::add_edge(std::string_view parent, std::string_view child) {
  add_edge(index(parent), index(child));
}

void Dag::add_edge(NodeId parent, NodeId child) {
  if (parent >= size() || child >= size()) throw GraphError("edge endpoint out of range");
  if (parent == child) throw GraphError("self-loop on '" + names_[parent] + "'");
  if (has_edge(parent, child))
    throw GraphError("duplicate edge " + names_[parent] + "->" + names_[child]);
  if (reaches(child, parent))
    throw GraphError("edge " + names_[parent] + "->" + names_[child] + " closes a cycle");
  parents_[child].insert(std::upper_bound(parents_[child].begin(), parents_[child].end(), parent),
                         parent);
  children_[parent].insert(
      std::upper_bound(children_[parent].begin(), children_[parent].end(), child), child);
  ++edge_count_;
}

bool Dag::has_edge(NodeId parent, NodeId child) const {
  const auto& ch = children_.at(parent);
  return std::binary_search(ch.begin(), ch.end(), child);
}

bool Dag::reaches(NodeId from, NodeId to) const {
  if (from == to) return true;
  std::vector<bool> seen(size(), false);
  std::vector<NodeId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : children_[v]) {
      if (c == to) return true;
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  return false;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId p = 0; p < size(); ++p)
    for (NodeId c : children_[p]) out.push_back({names_[p], names_[c]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> Dag::topological_order() const {
  std::vector<std::size_t> indegree(size());
  for (NodeId v = 0; v < size(); ++v) indegree[v] = parents_[v].size();
  std::vector<NodeId> order;
  order.reserve(size());
  std::deque<NodeId> ready;
  for (NodeId v = 0; v < size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (NodeId c : children_[v])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  return order;
}

std::vector<bool> Dag::ancestral_closure(std::span<const NodeId> seeds) const {
  std::vector<bool> mark(size(), false);
  std::vector<NodeId> stack(seeds.begin(), seeds.end());
  for (NodeId s : seeds) mark.at(s) = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p : parents_[v]) {
      if (!mark[p]) {
        mark[p] = true;
        stack.push_back(p);
      }
    }
  }
  return mark;
}

std::vector<bool> Dag::descendants(NodeId id) const {
  std::vector<bool> mark(size(), false);
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : children_[v]) {
      if (!mark[c]) {
        mark[c] = true;
        stack.push_back(c);
      }
    }
  }
  return mark;
}

bool Dag::is_ancestor(NodeId a, NodeId b) const { return a != b && reaches(a, b); }

bool operator==(const Dag& lhs, const Dag& rhs) {
  if (lhs.size() != rhs.size() || lhs.edge_count() != rhs.edge_count()) return false;
  return lhs.node_set() == rhs.node_set() && lhs.edges() == rhs.edges();
}

std::string to_string(const Dag& g) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g.name(i);
  os << "] {";
  bool first = true;
  for (const auto& e : g.edges()) {
    os << (first ? "" : ", ") << e.parent << "->" << e.child;
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

// Reachability ("Bayes ball") formulation: a trail may enter a node either
// from a child (moving up) or from a parent (moving down). A node in the
// conditioning set blocks everything except a collider pass; a collider pass
// needs the node to be conditioned or to have a conditioned descendant, i.e.
// to lie in the ancestral closure of the conditioning set.
bool d_separated(const Dag& g, NodeId a, NodeId b, const std::vector<bool>& conditioned) {
  const std::size_t n = g.size();
  std::vector<NodeId> cond_ids;
  for (NodeId v = 0; v < n; ++v)
    if (conditioned[v]) cond_ids.push_back(v);
  const std::vector<bool> opens_collider = g.ancestral_closure(cond_ids);

  enum Dir : int { kUp = 0, kDown = 1 };
  std::vector<bool> visited(2 * n, false);
  std::vector<std::pair<NodeId, Dir>> stack{{a, kUp}};
  while (!stack.empty()) {
    auto [v, dir] = stack.back();
    stack.pop_back();
    if (visited[2 * v + dir]) continue;
    visited[2 * v + dir] = true;
    if (v == b) return false;
    if (dir == kUp) {
      if (conditioned[v]) continue;
      for (NodeId p : g.parents(v)) stack.emplace_back(p, kUp);
      for (NodeId c : g.children(v)) stack.emplace_back(c, kDown);
    } else {
      if (!conditioned[v])
        for (NodeId c : g.children(v)) stack.emplace_back(c, kDown);
      if (opens_collider[v])
        for (NodeId p : g.parents(v)) stack.emplace_back(p, kUp);
    }
  }
  return true;
}

bool d_separated(const Dag& g, std::string_view a, std::string_view b, const NodeSet& cond) {
  const NodeId ia = g.index(a);
  const NodeId ib = g.index(b);
  if (ia == ib) throw InvalidArgument("d-separation query needs two distinct nodes");
  std::vector<bool> mask(g.size(), false);
  for (const auto& c : cond) mask[g.index(c)] = true;
  if (mask[ia] || mask[ib])
    throw InvalidArgument("query endpoint appears in the conditioning set");
  return d_separated(g, ia, ib, mask);
}

DSepSignature d_separation_signature(const Dag& g, const NodeSet& vars) {
  if (vars.size() < 2) throw InvalidArgument("signature needs at least two variables");
  std::vector<NodeId> ids;
  std::vector<std::string> names(vars.begin(), vars.end());
  for (const auto& v : names) {
    auto id = g.find(v);
    if (!id) throw InvalidArgument("signature variable '" + v + "' is not a node of the graph");
    ids.push_back(*id);
  }
  const std::size_t k = ids.size();
  if (k >= 8 * sizeof(unsigned long long) - 1)
    throw InvalidArgument("signature variable set too large");

  DSepSignature sig;
  std::vector<bool> mask(g.size(), false);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      // Enumerate subsets of the remaining k - 2 variables.
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < k; ++t)
        if (t != i && t != j) rest.push_back(t);
      const unsigned long long subsets = 1ULL << rest.size();
      for (unsigned long long s = 0; s < subsets; ++s) {
        std::fill(mask.begin(), mask.end(), false);
        for (std::size_t r = 0; r < rest.size(); ++r)
          if (s >> r & 1ULL) mask[ids[rest[r]]] = true;
        if (d_separated(g, ids[i], ids[j], mask)) {
          SepTriple t{names[i], names[j], {}};
          for (std::size_t r = 0; r < rest.size(); ++r)
            if (s >> r & 1ULL) t.cond.insert(names[rest[r]]);
          sig.insert(std::move(t));
        }
      }
    }
  }
  return sig;
}

DSepSignature d_separation_signature(const Dag& g) { return d_separation_signature(g, g.node_set()); }

std::string to_string(const SepTriple& t) {
  std::string out = t.a + " _||_ " + t.b + " | {";
  bool first = true;
  for (const auto& c : t.cond) {
    out += (first ? "" : ",") + c;
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

NodeSet graphical_markov_blanket(const Dag& g, std::string_view x) {
  const NodeId id = g.index(x);
  NodeSet mb;
  for (NodeId p : g.parents(id)) mb.insert(g.name(p));
  for (NodeId c : g.children(id)) {
    mb.insert(g.name(c));
    for (NodeId sp : g.parents(c))
      if (sp != id) mb.insert(g.name(sp));
  }
  return mb;
}

std::vector<Collider> unshielded_colliders(const Dag& g) {
  std::vector<Collider> out;
  for (NodeId x = 0; x < g.size(); ++x) {
    const auto& ps = g.parents(x);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (g.adjacent(ps[i], ps[j])) continue;
        std::string a = g.name(ps[i]);
        std::string b = g.name(ps[j]);
        if (b < a) std::swap(a, b);
        out.push_back({std::move(a), g.name(x), std::move(b)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TetradClass classify_tetrad(const Dag& g) {
  if (g.size() != 4) throw InvalidArgument("classify_tetrad needs exactly four nodes");
  const std::size_t edges = g.edge_count();
  if (edges != 3 && edges != 4) return {};
  for (NodeId x = 0; x < 4; ++x) {
    if (g.parents(x).size() != 2 || g.children(x).size() != 1) continue;
    const NodeId z = g.children(x).front();
    NodeId w1 = g.parents(x)[0];
    NodeId w2 = g.parents(x)[1];
    if (z == w1 || z == w2) continue;
    if (g.adjacent(w1, w2)) continue;
    if (g.name(w2) < g.name(w1)) std::swap(w1, w2);
    TetradClass out{TetradKind::Other, g.name(w1), g.name(w2), g.name(x), g.name(z)};
    const bool w1z = g.has_edge(w1, z);
    const bool w2z = g.has_edge(w2, z);
    // With x -> z present, the only other possible arcs touching z are w->z
    // or z->w; edge count pins down which pattern this is.
    if (edges == 3) {
      out.kind = TetradKind::YStructure;
      return out;
    }
    if (w1z != w2z) {
      out.kind = TetradKind::NearY;
      return out;
    }
  }
  return {};
}

}  // namespace ystruct
