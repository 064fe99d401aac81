#include "ystruct/pag.hpp"

#include <algorithm>

#include "ystruct/error.hpp"

namespace ystruct {

Pag::Pag(NodeSet nodes, std::vector<PagEdge> edges, DSepSignature signature)
    : nodes_(std::move(nodes)), signature_(std::move(signature)) {
  for (auto& e : edges) {
    if (!nodes_.contains(e.a) || !nodes_.contains(e.b))
      throw InvalidArgument("PAG edge references an unknown node");
    if (e.a == e.b) throw InvalidArgument("PAG self-edge on '" + e.a + "'");
    if (e.b < e.a) {
      std::swap(e.a, e.b);
      std::swap(e.at_a, e.at_b);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const PagEdge& l, const PagEdge& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].a == edges[i - 1].a && edges[i].b == edges[i - 1].b)
      throw InvalidArgument("more than one PAG edge between " + edges[i].a + " and " + edges[i].b);
  edges_ = std::move(edges);
}

std::optional<PagEdge> Pag::edge(const std::string& a, const std::string& b) const {
  for (const auto& e : edges_) {
    if (e.a == a && e.b == b) return e;
    if (e.a == b && e.b == a) return PagEdge{a, b, e.at_b, e.at_a};
  }
  return std::nullopt;
}

std::size_t Pag::circle_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_)
    n += (e.at_a == EndpointMark::Circle) + (e.at_b == EndpointMark::Circle);
  return n;
}

namespace {

EndpointMark mark_at(const std::vector<Dag>& members, const std::string& end,
                     const std::string& other) {
  bool always = true;
  bool never = true;
  for (const auto& g : members) {
    const bool anc = g.is_ancestor(g.index(end), g.index(other));
    always = always && anc;
    never = never && !anc;
  }
  if (always) return EndpointMark::Tail;
  if (never) return EndpointMark::Head;
  return EndpointMark::Circle;
}

}  // namespace

Pag build_pag_from_witnesses(const std::vector<Dag>& members, const NodeSet& observed) {
  if (members.empty()) throw InvalidArgument("PAG construction needs at least one witness DAG");
  for (const auto& g : members)
    for (const auto& v : observed)
      if (!g.has_node(v))
        throw InvalidArgument("observed variable '" + v + "' missing from a witness DAG");

  DSepSignature sig = d_separation_signature(members.front(), observed);
  for (std::size_t i = 1; i < members.size(); ++i)
    if (d_separation_signature(members[i], observed) != sig)
      throw SignatureMismatch("witness " + std::to_string(i) +
                              " has a different observed d-separation signature");

  std::vector<PagEdge> edges;
  for (auto i = observed.begin(); i != observed.end(); ++i) {
    for (auto j = std::next(i); j != observed.end(); ++j) {
      const bool separable = std::any_of(sig.begin(), sig.end(), [&](const SepTriple& t) {
        return t.a == *i && t.b == *j;
      });
      if (separable) continue;
      edges.push_back({*i, *j, mark_at(members, *i, *j), mark_at(members, *j, *i)});
    }
  }
  return Pag(observed, std::move(edges), std::move(sig));
}

Pag pag_of(const Dag& dag) { return build_pag_from_witnesses({dag}, dag.node_set()); }

std::optional<Dag> is_dag_pag(const Pag& p) {
  struct CircleSlot {
    std::size_t edge;
    bool at_a;
  };
  std::vector<CircleSlot> slots;
  for (std::size_t i = 0; i < p.edges().size(); ++i) {
    if (p.edges()[i].at_a == EndpointMark::Circle) slots.push_back({i, true});
    if (p.edges()[i].at_b == EndpointMark::Circle) slots.push_back({i, false});
  }
  if (slots.size() > 24) throw InvalidArgument("too many circle endpoints to search");

  const std::vector<std::string> names(p.nodes().begin(), p.nodes().end());
  const unsigned long long total = 1ULL << slots.size();
  for (unsigned long long assignment = 0; assignment < total; ++assignment) {
    std::vector<PagEdge> edges = p.edges();
    for (std::size_t s = 0; s < slots.size(); ++s) {
      // First slot is the most significant bit; 0 means tail.
      const bool head = assignment >> (slots.size() - 1 - s) & 1ULL;
      auto& e = edges[slots[s].edge];
      (slots[s].at_a ? e.at_a : e.at_b) = head ? EndpointMark::Head : EndpointMark::Tail;
    }
    Dag g(names);
    bool ok = true;
    for (const auto& e : edges) {
      if (e.at_a == EndpointMark::Tail && e.at_b == EndpointMark::Head) {
        try {
          g.add_edge(e.a, e.b);
        } catch (const GraphError&) {
          ok = false;
        }
      } else if (e.at_a == EndpointMark::Head && e.at_b == EndpointMark::Tail) {
        try {
          g.add_edge(e.b, e.a);
        } catch (const GraphError&) {
          ok = false;
        }
      } else {
        ok = false;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    if (p.nodes().size() < 2 || d_separation_signature(g, p.nodes()) == p.signature()) return g;
  }
  return std::nullopt;
}

DSepSignature epys_signature(const YLabeling& y) {
  auto pair = [](const std::string& u, const std::string& v, NodeSet cond) {
    return u < v ? SepTriple{u, v, std::move(cond)} : SepTriple{v, u, std::move(cond)};
  };
  return {
      pair(y.w1, y.w2, {}),
      pair(y.w1, y.z, {y.x}),
      pair(y.w1, y.z, {y.x, y.w2}),
      pair(y.w2, y.z, {y.x}),
      pair(y.w2, y.z, {y.x, y.w1}),
  };
}

std::optional<YLabeling> epys_holds(const DSepSignature& sig, const NodeSet& vars) {
  if (vars.size() != 4) throw InvalidArgument("EPYS check needs exactly four variables");
  if (sig.size() != 5) return std::nullopt;
  for (const auto& x : vars) {
    for (const auto& z : vars) {
      if (z == x) continue;
      std::vector<std::string> ws;
      for (const auto& v : vars)
        if (v != x && v != z) ws.push_back(v);
      YLabeling labels{ws[0], ws[1], x, z};
      if (epys_signature(labels) == sig) return labels;
    }
  }
  return std::nullopt;
}

std::string render(const Pag& p) {
  std::string out;
  using M = EndpointMark;
  for (const auto& e : p.edges()) {
    std::string left = e.a;
    std::string right = e.b;
    M ml = e.at_a;
    M mr = e.at_b;
    // Put any lone arrowhead on the right.
    if (ml == M::Head && mr != M::Head) {
      std::swap(left, right);
      std::swap(ml, mr);
    }
    // Put a lone tail on the left of a circle.
    if (ml == M::Circle && mr == M::Tail) {
      std::swap(left, right);
      std::swap(ml, mr);
    }
    auto glyph = [](M m, bool left_end) -> std::string {
      switch (m) {
        case M::Tail:
          return "-";
        case M::Circle:
          return "o";
        case M::Head:
          return left_end ? "<" : ">";
      }
      return "?";
    };
    out += left + " " + glyph(ml, true) + "-" + glyph(mr, false) + " " + right + "\n";
  }
  return out;
}

}  // namespace ystruct
