#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ystruct/graph.hpp"

namespace ystruct {

enum class EndpointMark { Tail, Head, Circle };

// Edge between `a` and `b` (a < b) with one mark at each end.
struct PagEdge {
  std::string a;
  std::string b;
  EndpointMark at_a = EndpointMark::Circle;
  EndpointMark at_b = EndpointMark::Circle;

  friend bool operator==(const PagEdge&, const PagEdge&) = default;
};

// Partial ancestral graph over observed variables. Its d-separation
// semantics is carried explicitly as the signature shared by the witness
// DAGs it was built from.
class Pag {
 public:
  Pag() = default;
  // Throws InvalidArgument on self-edges, duplicate pairs or unknown names.
  Pag(NodeSet nodes, std::vector<PagEdge> edges, DSepSignature signature);

  const NodeSet& nodes() const { return nodes_; }
  const std::vector<PagEdge>& edges() const { return edges_; }
  const DSepSignature& signature() const { return signature_; }

  // Edge lookup by unordered pair; marks are reported relative to (a, b)
  // as given by the caller.
  std::optional<PagEdge> edge(const std::string& a, const std::string& b) const;
  std::size_t circle_count() const;

 private:
  NodeSet nodes_;
  std::vector<PagEdge> edges_;  // sorted by (a, b)
  DSepSignature signature_;
};

// Finite-witness construction: adjacency iff d-connected given every subset
// of the other observed variables; tail at A iff A is an ancestor of B in
// every member; head at A iff A is an ancestor of B in no member; circle
// otherwise. Throws SignatureMismatch when members disagree on the observed
// signature and InvalidArgument on an empty list or missing observed names.
Pag build_pag_from_witnesses(const std::vector<Dag>& members, const NodeSet& observed);

// Single-witness shorthand: the PAG of one DAG over all of its nodes.
Pag pag_of(const Dag& dag);

// Searches all tail/head assignments to the circle endpoints (tail before
// head, edges in (a, b) order, earlier edges more significant) for one that
// yields a DAG with the Pag's signature. Returns the first hit.
std::optional<Dag> is_dag_pag(const Pag& p);

struct YLabeling {
  std::string w1;
  std::string w2;
  std::string x;
  std::string z;

  friend bool operator==(const YLabeling&, const YLabeling&) = default;
};

// The five separations of an embedded pure Y structure for one labeling:
// w1|w2 given {}, w1|z and w2|z given {x} and given {x, other w}.
DSepSignature epys_signature(const YLabeling& labels);

// True (with the labeling, w1 < w2) iff `sig` over the four `vars` equals
// exactly the five EPYS separations for some labeling. Throws
// InvalidArgument unless `vars` has four names.
std::optional<YLabeling> epys_holds(const DSepSignature& sig, const NodeSet& vars);

// One line per edge: `A o-> B`, `A --> B`, `A <-> B` or `A o-o B`, flipping
// the pair when the arrowhead sits at the first name. Tail-tail and
// tail-circle edges cannot come out of the witness builder; hand-made ones
// print as `A --- B` and `A --o B`.
std::string render(const Pag& p);

}  // namespace ystruct
