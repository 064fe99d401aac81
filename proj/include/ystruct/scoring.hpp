#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ystruct/dataset.hpp"
#include "ystruct/graph.hpp"

namespace ystruct {

// Number of labeled DAGs on four nodes; the uniform structure prior is
// spread over them.
inline constexpr std::size_t kFourNodeDagCount = 543;

struct ScoreParams {
  double ess = 1.0;  // equivalent sample size
  double log_structure_prior = -std::log(static_cast<double>(kFourNodeDagCount));

  // Throws InvalidArgument unless ess is positive and finite.
  void validate() const;
};

// Sufficient statistics N_ijk of one family: `counts[j * states + k]`.
struct FamilyCounts {
  std::size_t configs = 1;  // q_i
  std::size_t states = 0;   // r_i
  std::vector<std::uint64_t> counts;

  std::uint64_t row_total(std::size_t j) const;
};

// Per-node family counts for one DAG, in the DAG's node order.
struct CountTable {
  std::vector<FamilyCounts> families;
};

// Counts child column `child` against parent columns `parents` (first
// parent most significant).
FamilyCounts count_family(const Dataset& d, std::size_t child,
                          std::span<const std::size_t> parents);

CountTable count_table(const Dag& g, const Dataset& d);

// Dirichlet-multinomial log marginal likelihood of one family with
// alpha_ijk = ess / (r_i q_i):
//   sum_j [lgamma(a_ij) - lgamma(a_ij + N_ij) + sum_k (lgamma(a_ijk + N_ijk) - lgamma(a_ijk))]
double family_log_score(const FamilyCounts& f, double ess);

// log P(S) + sum of family terms. Dataset columns are matched by node name.
// Throws DataError when a node has no column.
double bde_log_score(const Dag& g, const Dataset& d, const ScoreParams& p);

// Normalizes log scores: exp(s_i - max) / sum. Result sums to 1.
std::vector<double> normalize_log_scores(std::span<const double> log_scores);

// Normalized posterior over a list of structures sharing a node set.
std::vector<double> posterior_over_dags(const std::vector<Dag>& dags, const Dataset& d,
                                        const ScoreParams& p);

// Thread-safe log-gamma.
double log_gamma(double x);

}  // namespace ystruct
