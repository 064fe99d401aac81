#include "ystruct/bayes_net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ystruct/error.hpp"

namespace ystruct {

DiscreteBayesNet::DiscreteBayesNet(Dag dag, std::vector<int> arities, std::vector<bool> latent,
                                   std::vector<Cpt> cpts)
    : dag_(std::move(dag)),
      arities_(std::move(arities)),
      latent_(std::move(latent)),
      cpts_(std::move(cpts)) {
  const std::size_t n = dag_.size();
  if (latent_.empty()) latent_.assign(n, false);
  if (arities_.size() != n || latent_.size() != n || cpts_.size() != n)
    throw InvalidArgument("network needs one arity, latent flag and CPT per node");
  for (NodeId v = 0; v < n; ++v) {
    if (arities_[v] < 2) throw InvalidArgument("arity of '" + dag_.name(v) + "' must be >= 2");
    std::size_t rows = 1;
    for (NodeId p : dag_.parents(v)) rows *= static_cast<std::size_t>(arities_[p]);
    const Cpt& t = cpts_[v];
    if (t.rows != rows || t.states != static_cast<std::size_t>(arities_[v]) ||
        t.probs.size() != rows * t.states)
      throw InvalidArgument("CPT of '" + dag_.name(v) + "' has the wrong shape");
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (double p : t.row(r)) {
        if (!(p >= 0.0)) throw InvalidArgument("negative or NaN entry in CPT of '" + dag_.name(v) + "'");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidArgument("CPT row of '" + dag_.name(v) + "' does not sum to 1");
    }
  }
}

NodeSet DiscreteBayesNet::observed() const {
  NodeSet out;
  for (NodeId v = 0; v < size(); ++v)
    if (!latent_[v]) out.insert(dag_.name(v));
  return out;
}

std::vector<std::string> DiscreteBayesNet::observed_order() const {
  std::vector<std::string> out;
  for (NodeId v = 0; v < size(); ++v)
    if (!latent_[v]) out.push_back(dag_.name(v));
  return out;
}

std::size_t DiscreteBayesNet::parent_row(NodeId id, std::span<const Value> assignment) const {
  std::size_t row = 0;
  for (NodeId p : dag_.parents(id))
    row = row * static_cast<std::size_t>(arities_[p]) + static_cast<std::size_t>(assignment[p]);
  return row;
}

double JointTable::mass() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

std::optional<std::size_t> JointTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return i;
  return std::nullopt;
}

DiscreteBayesNet random_parameterization(const Dag& dag, const std::vector<int>& arities,
                                         std::uint64_t seed, double concentration,
                                         std::vector<bool> latent) {
  if (!(concentration > 0.0) || !std::isfinite(concentration))
    throw InvalidArgument("Dirichlet concentration must be positive");
  if (arities.size() != dag.size()) throw InvalidArgument("one arity per node required");
  for (int r : arities)
    if (r < 2) throw InvalidArgument("arity must be at least 2");

  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<Cpt> cpts;
  for (NodeId v = 0; v < dag.size(); ++v) {
    Cpt t;
    t.rows = 1;
    for (NodeId p : dag.parents(v)) t.rows *= static_cast<std::size_t>(arities[p]);
    t.states = static_cast<std::size_t>(arities[v]);
    t.probs.resize(t.rows * t.states);
    for (std::size_t r = 0; r < t.rows; ++r) {
      double sum = 0.0;
      // Tiny concentrations can underflow every draw; redraw until usable.
      do {
        sum = 0.0;
        for (std::size_t k = 0; k < t.states; ++k) sum += (t.probs[r * t.states + k] = gamma(rng));
      } while (!(sum > 0.0));
      for (std::size_t k = 0; k < t.states; ++k) t.probs[r * t.states + k] /= sum;
    }
    cpts.push_back(std::move(t));
  }
  return DiscreteBayesNet(dag, arities, std::move(latent), std::move(cpts));
}

JointTable exact_joint(const DiscreteBayesNet& net) {
  const std::size_t n = net.size();
  std::size_t cells = 1;
  for (int r : net.arities()) {
    cells *= static_cast<std::size_t>(r);
    if (cells > kMaxJointCells) throw InvalidArgument("joint table exceeds the size guard");
  }
  JointTable joint{net.dag().nodes(), net.arities(), std::vector<double>(cells, 0.0)};
  std::vector<Value> config(n, 0);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    double p = 1.0;
    for (NodeId v = 0; v < n && p > 0.0; ++v)
      p *= net.cpt(v).at(net.parent_row(v, config), static_cast<std::size_t>(config[v]));
    joint.probs[idx] = p;
    // Last variable is least significant.
    for (std::size_t v = n; v-- > 0;) {
      if (++config[v] < net.arity(v)) break;
      config[v] = 0;
    }
  }
  return joint;
}

JointTable marginalize(const JointTable& joint, const NodeSet& keep) {
  for (const auto& k : keep)
    if (!joint.find(k)) throw InvalidArgument("cannot keep unknown variable '" + k + "'");
  JointTable out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < joint.variables.size(); ++i) {
    if (keep.contains(joint.variables[i])) {
      kept.push_back(i);
      out.variables.push_back(joint.variables[i]);
      out.arities.push_back(joint.arities[i]);
    }
  }
  std::size_t cells = 1;
  for (int r : out.arities) cells *= static_cast<std::size_t>(r);
  out.probs.assign(cells, 0.0);

  const std::size_t n = joint.variables.size();
  std::vector<int> config(n, 0);
  for (std::size_t idx = 0; idx < joint.probs.size(); ++idx) {
    std::size_t target = 0;
    for (std::size_t k : kept) target = target * static_cast<std::size_t>(joint.arities[k]) +
                                        static_cast<std::size_t>(config[k]);
    out.probs[target] += joint.probs[idx];
    for (std::size_t v = n; v-- > 0;) {
      if (++config[v] < joint.arities[v]) break;
      config[v] = 0;
    }
  }
  return out;
}

Dataset forward_sample(const DiscreteBayesNet& net, std::size_t m, std::uint64_t seed) {
  const auto order = net.dag().topological_order();
  std::vector<std::size_t> observed_ids;
  std::vector<int> observed_arities;
  for (NodeId v = 0; v < net.size(); ++v) {
    if (!net.latent(v)) {
      observed_ids.push_back(v);
      observed_arities.push_back(net.arity(v));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Value> cells;
  cells.reserve(m * observed_ids.size());
  std::vector<Value> config(net.size(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (NodeId v : order) {
      const auto row = net.cpt(v).row(net.parent_row(v, config));
      const double u = unit(rng);
      double acc = 0.0;
      Value pick = static_cast<Value>(row.size() - 1);
      for (std::size_t k = 0; k < row.size(); ++k) {
        acc += row[k];
        if (u < acc) {
          pick = static_cast<Value>(k);
          break;
        }
      }
      // Guard against rounding pushing past a trailing zero-probability state.
      while (pick > 0 && row[static_cast<std::size_t>(pick)] == 0.0) --pick;
      config[v] = pick;
    }
    for (std::size_t v : observed_ids) cells.push_back(config[v]);
  }
  return Dataset(net.observed_order(), std::move(observed_arities), std::move(cells));
}

double dependence_gap(const JointTable& joint, std::string_view a, std::string_view b,
                      const NodeSet& cond) {
  if (!joint.find(a) || !joint.find(b)) throw InvalidArgument("unknown variable in independence query");
  if (a == b) throw InvalidArgument("independence query needs two distinct variables");
  if (cond.contains(std::string(a)) || cond.contains(std::string(b)))
    throw InvalidArgument("query variable appears in the conditioning set");

  NodeSet keep = cond;
  keep.insert(std::string(a));
  keep.insert(std::string(b));
  const JointTable m = marginalize(joint, keep);
  const std::size_t ia = *m.find(a);
  const std::size_t ib = *m.find(b);
  const std::size_t ra = static_cast<std::size_t>(m.arities[ia]);
  const std::size_t rb = static_cast<std::size_t>(m.arities[ib]);

  // stride[i]: step of variable i in the mixed-radix index.
  std::vector<std::size_t> stride(m.variables.size(), 1);
  for (std::size_t i = m.variables.size(); i-- > 1;)
    stride[i - 1] = stride[i] * static_cast<std::size_t>(m.arities[i]);

  double worst = 0.0;
  std::vector<double> pa(ra), pb(rb);
  for (std::size_t base = 0; base < m.probs.size(); ++base) {
    // Visit each conditioning configuration once: a and b both at 0.
    if ((base / stride[ia]) % ra != 0 || (base / stride[ib]) % rb != 0) continue;
    double pc = 0.0;
    std::fill(pa.begin(), pa.end(), 0.0);
    std::fill(pb.begin(), pb.end(), 0.0);
    for (std::size_t x = 0; x < ra; ++x) {
      for (std::size_t y = 0; y < rb; ++y) {
        const double p = m.probs[base + x * stride[ia] + y * stride[ib]];
        pc += p;
        pa[x] += p;
        pb[y] += p;
      }
    }
    if (!(pc > 0.0)) continue;
    for (std::size_t x = 0; x < ra; ++x) {
      for (std::size_t y = 0; y < rb; ++y) {
        const double pab = m.probs[base + x * stride[ia] + y * stride[ib]] / pc;
        worst = std::max(worst, std::abs(pab - (pa[x] / pc) * (pb[y] / pc)));
      }
    }
  }
  return worst;
}

bool independent_in_dist(const JointTable& joint, std::string_view a, std::string_view b,
                         const NodeSet& cond, double tol) {
  return dependence_gap(joint, a, b, cond) <= tol;
}

bool verify_perfect_map(const DiscreteBayesNet& net, const NodeSet& observed, double tol) {
  for (const auto& v : observed)
    if (!net.dag().has_node(v)) throw InvalidArgument("observed variable '" + v + "' not in net");
  if (observed.size() < 2) return true;
  const JointTable joint = marginalize(exact_joint(net), observed);
  const DSepSignature sig = d_separation_signature(net.dag(), observed);
  const std::vector<std::string> vars(observed.begin(), observed.end());
  const std::size_t k = vars.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<std::string> rest;
      for (std::size_t t = 0; t < k; ++t)
        if (t != i && t != j) rest.push_back(vars[t]);
      for (std::size_t s = 0; s < (std::size_t{1} << rest.size()); ++s) {
        NodeSet cond;
        for (std::size_t r = 0; r < rest.size(); ++r)
          if (s >> r & 1U) cond.insert(rest[r]);
        const bool sep = sig.contains(SepTriple{vars[i], vars[j], cond});
        if (sep != independent_in_dist(joint, vars[i], vars[j], cond, tol)) return false;
      }
    }
  }
  return true;
}

double log_likelihood(const DiscreteBayesNet& net, const Dataset& data) {
  std::vector<std::size_t> col(net.size());
  for (NodeId v = 0; v < net.size(); ++v) {
    if (net.latent(v)) throw InvalidArgument("log_likelihood needs a net without latent nodes");
    col[v] = data.column(net.dag().name(v));
  }
  double ll = 0.0;
  std::vector<Value> config(net.size());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (NodeId v = 0; v < net.size(); ++v) config[v] = data.at(r, col[v]);
    for (NodeId v = 0; v < net.size(); ++v)
      ll += std::log(net.cpt(v).at(net.parent_row(v, config), static_cast<std::size_t>(config[v])));
  }
  return ll;
}

}  // namespace ystruct
