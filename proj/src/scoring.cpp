#include "ystruct/scoring.hpp"

#include <algorithm>
#include <math.h>

#include "ystruct/error.hpp"

namespace ystruct {

void ScoreParams::validate() const {
  if (!(ess > 0.0) || !std::isfinite(ess))
    throw InvalidArgument("equivalent sample size must be positive");
  if (!std::isfinite(log_structure_prior))
    throw InvalidArgument("structure prior must be finite in log space");
}

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

std::uint64_t FamilyCounts::row_total(std::size_t j) const {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < states; ++k) n += counts[j * states + k];
  return n;
}

FamilyCounts count_family(const Dataset& d, std::size_t child,
                          std::span<const std::size_t> parents) {
  FamilyCounts f;
  f.states = static_cast<std::size_t>(d.arity(child));
  for (std::size_t p : parents) f.configs *= static_cast<std::size_t>(d.arity(p));
  f.counts.assign(f.configs * f.states, 0);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    std::size_t j = 0;
    for (std::size_t p : parents)
      j = j * static_cast<std::size_t>(d.arity(p)) + static_cast<std::size_t>(d.at(r, p));
    ++f.counts[j * f.states + static_cast<std::size_t>(d.at(r, child))];
  }
  return f;
}

CountTable count_table(const Dag& g, const Dataset& d) {
  std::vector<std::size_t> col(g.size());
  for (NodeId v = 0; v < g.size(); ++v) {
    auto c = d.find(g.name(v));
    if (!c) throw DataError("dataset has no column for node '" + g.name(v) + "'");
    col[v] = *c;
  }
  CountTable t;
  for (NodeId v = 0; v < g.size(); ++v) {
    std::vector<std::size_t> parents;
    for (NodeId p : g.parents(v)) parents.push_back(col[p]);
    t.families.push_back(count_family(d, col[v], parents));
  }
  return t;
}

double family_log_score(const FamilyCounts& f, double ess) {
  const double a_ijk = ess / static_cast<double>(f.configs * f.states);
  const double a_ij = ess / static_cast<double>(f.configs);
  const double lg_aijk = log_gamma(a_ijk);
  const double lg_aij = log_gamma(a_ij);
  double score = 0.0;
  for (std::size_t j = 0; j < f.configs; ++j) {
    std::uint64_t n_ij = 0;
    for (std::size_t k = 0; k < f.states; ++k) {
      const std::uint64_t n = f.counts[j * f.states + k];
      if (n == 0) continue;
      n_ij += n;
      score += log_gamma(a_ijk + static_cast<double>(n)) - lg_aijk;
    }
    if (n_ij != 0) score += lg_aij - log_gamma(a_ij + static_cast<double>(n_ij));
  }
  return score;
}

double bde_log_score(const Dag& g, const Dataset& d, const ScoreParams& p) {
  p.validate();
  if (g.size() == 0) throw DataError("cannot score an empty graph");
  const CountTable t = count_table(g, d);
  double score = p.log_structure_prior;
  for (const auto& f : t.families) score += family_log_score(f, p.ess);
  return score;
}

std::vector<double> normalize_log_scores(std::span<const double> log_scores) {
  if (log_scores.empty()) throw InvalidArgument("cannot normalize an empty score list");
  const double top = *std::max_element(log_scores.begin(), log_scores.end());
  std::vector<double> out(log_scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) total += (out[i] = std::exp(log_scores[i] - top));
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> posterior_over_dags(const std::vector<Dag>& dags, const Dataset& d,
                                        const ScoreParams& p) {
  if (dags.empty()) throw InvalidArgument("posterior needs at least one DAG");
  const NodeSet nodes = dags.front().node_set();
  std::vector<double> scores;
  scores.reserve(dags.size());
  for (const auto& g : dags) {
    if (g.node_set() != nodes) throw InvalidArgument("DAGs in a posterior must share a node set");
    scores.push_back(bde_log_score(g, d, p));
  }
  return normalize_log_scores(scores);
}

}  // namespace ystruct
