#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ystruct/dataset.hpp"
#include "ystruct/graph.hpp"

namespace ystruct {

// Conditional probability table of one node. Row j is the distribution of
// the node given parent configuration j, where configurations are numbered
// mixed-radix over the node's parents in declaration order (first parent
// most significant).
struct Cpt {
  std::size_t rows = 0;
  std::size_t states = 0;
  std::vector<double> probs;  // rows x states, row-major

  double at(std::size_t row, std::size_t state) const { return probs[row * states + state]; }
  std::span<const double> row(std::size_t r) const { return {probs.data() + r * states, states}; }
};

// Complete-table discrete Bayesian network. Immutable once built.
class DiscreteBayesNet {
 public:
  DiscreteBayesNet() = default;
  // Throws InvalidArgument unless every CPT has prod(parent arities) rows of
  // `arity` nonnegative entries summing to 1 within 1e-12.
  DiscreteBayesNet(Dag dag, std::vector<int> arities, std::vector<bool> latent,
                   std::vector<Cpt> cpts);

  const Dag& dag() const { return dag_; }
  std::size_t size() const { return dag_.size(); }
  const std::vector<int>& arities() const { return arities_; }
  int arity(NodeId id) const { return arities_.at(id); }
  bool latent(NodeId id) const { return latent_.at(id); }
  const std::vector<bool>& latent_flags() const { return latent_; }
  const Cpt& cpt(NodeId id) const { return cpts_.at(id); }
  const std::vector<Cpt>& cpts() const { return cpts_; }

  NodeSet observed() const;
  // Observed names in declaration order.
  std::vector<std::string> observed_order() const;

  // Row of `id`'s CPT selected by a full assignment of all nodes.
  std::size_t parent_row(NodeId id, std::span<const Value> assignment) const;

 private:
  Dag dag_;
  std::vector<int> arities_;
  std::vector<bool> latent_;
  std::vector<Cpt> cpts_;
};

// Dense distribution over named variables; configurations are numbered
// mixed-radix with the first variable most significant.
struct JointTable {
  std::vector<std::string> variables;
  std::vector<int> arities;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double mass() const;
  std::optional<std::size_t> find(std::string_view name) const;
};

inline constexpr std::size_t kMaxJointCells = std::size_t{1} << 24;

// Each CPT row drawn from a symmetric Dirichlet(concentration), seeded.
// `latent` defaults to all-observed.
DiscreteBayesNet random_parameterization(const Dag& dag, const std::vector<int>& arities,
                                         std::uint64_t seed, double concentration = 1.0,
                                         std::vector<bool> latent = {});

// Product of CPT entries over every configuration of all nodes (latent ones
// included), variables in declaration order. Throws InvalidArgument past
// kMaxJointCells.
JointTable exact_joint(const DiscreteBayesNet& net);

// Sums out every variable not in `keep`; kept variables retain their order.
JointTable marginalize(const JointTable& joint, const NodeSet& keep);

// Ancestral sampling; latent columns are dropped from the result.
Dataset forward_sample(const DiscreteBayesNet& net, std::size_t m, std::uint64_t seed);

// max |P(a,b|c) - P(a|c)P(b|c)| over all configurations with P(c) > 0.
double dependence_gap(const JointTable& joint, std::string_view a, std::string_view b,
                      const NodeSet& cond);

// dependence_gap(...) <= tol.
bool independent_in_dist(const JointTable& joint, std::string_view a, std::string_view b,
                         const NodeSet& cond, double tol);

// True iff, for every a, b in `observed` and C within the rest of
// `observed`, independence in the exact marginal (at `tol`) coincides with
// d-separation in net.dag().
bool verify_perfect_map(const DiscreteBayesNet& net, const NodeSet& observed, double tol);

// Log-likelihood of a dataset under a net without latent variables; dataset
// columns are matched by name.
double log_likelihood(const DiscreteBayesNet& net, const Dataset& data);

}  // namespace ystruct
