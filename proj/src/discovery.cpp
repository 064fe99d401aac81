#include "ystruct/discovery.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ystruct/equivalence.hpp"
#include "ystruct/error.hpp"
#include "ystruct/parallel.hpp"

namespace ystruct {
namespace {

struct YRole {
  std::size_t dag_index;
  int w1, w2, x, z;  // positions within the tetrad
};

// Index-level view of the 543 four-node DAGs, computed once.
struct TetradTemplate {
  std::vector<std::array<unsigned, 4>> parent_masks;
  std::vector<YRole> y_roles;  // sorted by (x, z)

  TetradTemplate() {
    const std::vector<std::string> names{"0", "1", "2", "3"};
    std::size_t index = 0;
    for_each_dag(names, [&](const Dag& g) {
      std::array<unsigned, 4> masks{};
      for (NodeId v = 0; v < 4; ++v)
        for (NodeId p : g.parents(v)) masks[v] |= 1U << p;
      parent_masks.push_back(masks);
      const TetradClass cls = classify_tetrad(g);
      if (cls.kind == TetradKind::YStructure)
        y_roles.push_back({index, std::stoi(cls.w1), std::stoi(cls.w2), std::stoi(cls.x),
                           std::stoi(cls.z)});
      ++index;
    });
    if (parent_masks.size() != kFourNodeDagCount) throw Error("four-node enumeration is broken");
    std::sort(y_roles.begin(), y_roles.end(), [](const YRole& a, const YRole& b) {
      return std::tie(a.x, a.z) < std::tie(b.x, b.z);
    });
    // Exactly one labeled Y structure per ordered (x, z) pair.
    if (y_roles.size() != 12) throw Error("expected 12 labeled Y structures");
    for (std::size_t i = 1; i < y_roles.size(); ++i)
      if (y_roles[i].x == y_roles[i - 1].x && y_roles[i].z == y_roles[i - 1].z)
        throw Error("two Y structures share a sink arc");
  }
};

const TetradTemplate& tetrad_template() {
  static const TetradTemplate t;
  return t;
}

Tetrad sorted_tetrad(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  return {names[0], names[1], names[2], names[3]};
}

}  // namespace

std::vector<Dag> tetrad_dags(const Tetrad& names) {
  if (!std::is_sorted(names.begin(), names.end()))
    throw InvalidArgument("tetrad names must be sorted");
  const auto& t = tetrad_template();
  const std::vector<std::string> list(names.begin(), names.end());
  std::vector<Dag> out;
  out.reserve(t.parent_masks.size());
  for (const auto& masks : t.parent_masks) {
    Dag g(list);
    for (NodeId v = 0; v < 4; ++v)
      for (NodeId p = 0; p < 4; ++p)
        if (masks[v] >> p & 1U) g.add_edge(p, v);
    out.push_back(std::move(g));
  }
  return out;
}

const YArc& DiscoveryReport::arc(std::string_view x, std::string_view z) const {
  for (const auto& a : y_arcs)
    if (a.x == x && a.z == z) return a;
  throw InvalidArgument("no Y arc " + std::string(x) + " -> " + std::string(z) + " in tetrad");
}

DiscoveryReport y_posterior(const Dataset& d, const ScoreParams& p) {
  p.validate();
  if (d.width() != 4) throw InvalidArgument("Y posterior needs exactly four variables");
  const auto& tpl = tetrad_template();

  DiscoveryReport report;
  report.tetrad = sorted_tetrad(d.variables());
  report.cases = d.rows();

  std::array<std::size_t, 4> col{};
  std::array<std::size_t, 4> arity{};
  for (std::size_t i = 0; i < 4; ++i) {
    col[i] = d.column(report.tetrad[i]);
    arity[i] = static_cast<std::size_t>(d.arity(col[i]));
  }

  // Joint counts over the four sorted variables, first most significant.
  const std::size_t cells = arity[0] * arity[1] * arity[2] * arity[3];
  std::vector<std::uint64_t> joint(cells, 0);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i) idx = idx * arity[i] + static_cast<std::size_t>(d.at(r, col[i]));
    ++joint[idx];
  }

  // Family scores for every (child, parent mask).
  std::array<std::array<double, 16>, 4> family{};
  for (std::size_t v = 0; v < 4; ++v) {
    for (unsigned mask = 0; mask < 16; ++mask) {
      if (mask >> v & 1U) continue;
      FamilyCounts f;
      f.states = arity[v];
      for (std::size_t q = 0; q < 4; ++q)
        if (mask >> q & 1U) f.configs *= arity[q];
      f.counts.assign(f.configs * f.states, 0);
      std::array<std::size_t, 4> cfg{};
      for (std::size_t idx = 0; idx < cells; ++idx) {
        if (joint[idx] != 0) {
          std::size_t j = 0;
          for (std::size_t q = 0; q < 4; ++q)
            if (mask >> q & 1U) j = j * arity[q] + cfg[q];
          f.counts[j * f.states + cfg[v]] += joint[idx];
        }
        for (std::size_t q = 4; q-- > 0;) {
          if (++cfg[q] < arity[q]) break;
          cfg[q] = 0;
        }
      }
      family[v][mask] = family_log_score(f, p.ess);
    }
  }

  report.log_scores.reserve(tpl.parent_masks.size());
  for (const auto& masks : tpl.parent_masks) {
    double s = p.log_structure_prior;
    for (std::size_t v = 0; v < 4; ++v) s += family[v][masks[v]];
    report.log_scores.push_back(s);
  }
  report.posteriors = normalize_log_scores(report.log_scores);
  report.argmax = static_cast<std::size_t>(
      std::max_element(report.posteriors.begin(), report.posteriors.end()) -
      report.posteriors.begin());

  for (const auto& role : tpl.y_roles) {
    report.y_arcs.push_back({report.tetrad[role.x], report.tetrad[role.z], report.tetrad[role.w1],
                             report.tetrad[role.w2], role.dag_index,
                             report.posteriors[role.dag_index]});
  }
  return report;
}

MbEstimate estimate_markov_blanket(const Dataset& d, std::string_view x, const ScoreParams& p,
                                   std::size_t max_size) {
  p.validate();
  if (max_size < 3) throw InvalidArgument("Markov blanket size cap must be at least 3");
  if (d.width() < 4) throw InvalidArgument("Markov blanket search needs at least four variables");
  const std::size_t target = d.column(x);

  // Candidate columns in lexicographic name order.
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < d.width(); ++c)
    if (c != target) candidates.push_back(c);
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return d.variables()[a] < d.variables()[b];
  });

  auto score_of = [&](const std::vector<std::size_t>& parents) {
    return family_log_score(count_family(d, target, parents), p.ess);
  };
  auto sorted_members = [&](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
      return d.variables()[a] < d.variables()[b];
    });
    return v;
  };

  MbEstimate est;
  est.target = std::string(x);
  std::vector<std::size_t> members;
  double current = score_of(members);
  est.initial_score = current;

  // Forward phase.
  while (members.size() < max_size) {
    double best = current;
    std::optional<std::size_t> pick;
    for (std::size_t c : candidates) {
      if (std::find(members.begin(), members.end(), c) != members.end()) continue;
      auto trial = members;
      trial.push_back(c);
      const double s = score_of(sorted_members(trial));
      if (s > best) {
        best = s;
        pick = c;
      }
    }
    if (!pick) break;
    members.push_back(*pick);
    members = sorted_members(members);
    current = best;
    est.trace.push_back({MbStep::Kind::Add, d.variables()[*pick], current});
  }

  // Backward phase.
  for (;;) {
    double best = current;
    std::optional<std::size_t> drop;
    for (std::size_t c : members) {
      std::vector<std::size_t> trial;
      for (std::size_t m : members)
        if (m != c) trial.push_back(m);
      const double s = score_of(trial);
      if (s > best) {
        best = s;
        drop = c;
      }
    }
    if (!drop) break;
    members.erase(std::find(members.begin(), members.end(), *drop));
    current = best;
    est.trace.push_back({MbStep::Kind::Remove, d.variables()[*drop], current});
  }

  for (std::size_t c : members) est.members.insert(d.variables()[c]);
  return est;
}

SearchResult search_tetrads(const Dataset& d, const ScoreParams& p, double threshold,
                            std::vector<Tetrad> tetrads) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw InvalidArgument("threshold must lie in [0, 1]");
  p.validate();
  for (auto& t : tetrads) std::sort(t.begin(), t.end());
  std::sort(tetrads.begin(), tetrads.end());
  tetrads.erase(std::unique(tetrads.begin(), tetrads.end()), tetrads.end());

  std::vector<std::vector<YArc>> hits(tetrads.size());
  parallel_for(tetrads.size(), [&](std::size_t i) {
    const auto& t = tetrads[i];
    const DiscoveryReport r = y_posterior(d.select({t.begin(), t.end()}), p);
    for (const auto& a : r.y_arcs)
      if (a.posterior >= threshold) hits[i].push_back(a);
  });

  std::map<std::pair<std::string, std::string>, ArcPosterior> best;
  for (std::size_t i = 0; i < tetrads.size(); ++i) {
    for (const auto& a : hits[i]) {
      auto key = std::make_pair(a.x, a.z);
      auto it = best.find(key);
      // Tetrads are visited in sorted order, so ties keep the first tetrad.
      if (it == best.end() || a.posterior > it->second.posterior)
        best[key] = ArcPosterior{a.x, a.z, a.posterior, tetrads[i]};
    }
  }

  SearchResult out;
  for (auto& [key, arc] : best) out.arcs.push_back(arc);
  std::stable_sort(out.arcs.begin(), out.arcs.end(),
                   [](const ArcPosterior& a, const ArcPosterior& b) { return a.posterior > b.posterior; });
  out.tetrads = std::move(tetrads);
  return out;
}

SearchResult blcd_search(const Dataset& d, const ScoreParams& p, double threshold,
                         std::size_t max_blanket) {
  if (d.width() < 4) throw InvalidArgument("tetrad search needs at least four variables");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw InvalidArgument("threshold must lie in [0, 1]");

  std::vector<std::string> order = d.variables();
  std::sort(order.begin(), order.end());
  std::vector<MbEstimate> blankets(order.size());
  parallel_for(order.size(), [&](std::size_t i) {
    blankets[i] = estimate_markov_blanket(d, order[i], p, max_blanket);
  });

  std::vector<Tetrad> tetrads;
  for (const auto& mb : blankets) {
    const std::vector<std::string> m(mb.members.begin(), mb.members.end());
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b)
        for (std::size_t c = b + 1; c < m.size(); ++c)
          tetrads.push_back(Tetrad{mb.target, m[a], m[b], m[c]});
  }
  SearchResult out = search_tetrads(d, p, threshold, std::move(tetrads));
  out.blankets = std::move(blankets);
  return out;
}

SearchResult exhaustive_search(const Dataset& d, const ScoreParams& p, double threshold) {
  if (d.width() < 4) throw InvalidArgument("tetrad search needs at least four variables");
  std::vector<std::string> v = d.variables();
  std::sort(v.begin(), v.end());
  std::vector<Tetrad> tetrads;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      for (std::size_t c = b + 1; c < v.size(); ++c)
        for (std::size_t e = c + 1; e < v.size(); ++e) tetrads.push_back({v[a], v[b], v[c], v[e]});
  return search_tetrads(d, p, threshold, std::move(tetrads));
}

}  // namespace ystruct
