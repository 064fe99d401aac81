#include "ystruct/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ystruct/io.hpp"
#include "ystruct/pag.hpp"
#include "ystruct/parallel.hpp"

namespace ystruct {

using nlohmann::json;

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (std::uint64_t p : parts) h = mix(h ^ mix(p));
  return h;
}

namespace {

Fixture build(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges,
              std::vector<std::string> latent_names, bool y_expected, bool near_y_expected) {
  Fixture f;
  f.name = std::move(name);
  f.dag = Dag(nodes, edges);
  f.latent.assign(nodes.size(), false);
  for (const auto& l : latent_names) f.latent[f.dag.index(l)] = true;
  f.tetrad = {"W1", "W2", "X", "Z"};
  const std::vector<std::string> obs(f.tetrad.begin(), f.tetrad.end());
  if (y_expected) f.expected_argmax = Dag(obs, std::vector<Edge>{{"W1", "X"}, {"W2", "X"}, {"X", "Z"}});
  if (near_y_expected)
    f.expected_argmax =
        Dag(obs, std::vector<Edge>{{"W1", "X"}, {"W2", "X"}, {"X", "Z"}, {"W1", "Z"}});
  return f;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"y_net", "near_y_net", "latent_confounder_net", "epys_latent_net", "independent_net"};
}

Fixture make_fixture(std::string_view name) {
  if (name == "y_net")
    return build("y_net", {"W1", "W2", "X", "Z"}, {{"W1", "X"}, {"W2", "X"}, {"X", "Z"}}, {}, true,
                 false);
  if (name == "near_y_net")
    return build("near_y_net", {"W1", "W2", "X", "Z"},
                 {{"W1", "X"}, {"W2", "X"}, {"X", "Z"}, {"W1", "Z"}}, {}, false, true);
  if (name == "latent_confounder_net")
    return build("latent_confounder_net", {"H", "W1", "W2", "X", "Z"},
                 {{"H", "X"}, {"H", "Z"}, {"W1", "X"}, {"W2", "X"}}, {"H"}, false, false);
  if (name == "epys_latent_net")
    // Latent H is a common parent of W1 and the extra observed U; it sits
    // upstream of the tetrad and confounds no pair inside it.
    return build("epys_latent_net", {"H", "U", "W1", "W2", "X", "Z"},
                 {{"H", "U"}, {"H", "W1"}, {"W1", "X"}, {"W2", "X"}, {"X", "Z"}}, {"H"}, true,
                 false);
  if (name == "independent_net") {
    Fixture f = build("independent_net", {"W1", "W2", "X", "Z"}, {}, {}, false, false);
    f.expected_argmax = Dag(std::vector<std::string>{"W1", "W2", "X", "Z"});
    return f;
  }
  throw InvalidArgument("unknown fixture '" + std::string(name) + "'");
}

FaithfulNet generate_faithful_net(const Fixture& f, int arity, double concentration,
                                  std::uint64_t seed, double tol, std::size_t max_retries) {
  NodeSet observed;
  for (NodeId v = 0; v < f.dag.size(); ++v)
    if (!f.latent[v]) observed.insert(f.dag.name(v));

  FaithfulNet out;
  if (f.fixed_net) {
    if (!verify_perfect_map(*f.fixed_net, observed, tol))
      throw SetupError("fixed network '" + f.name + "' fails the faithfulness screen");
    out.net = *f.fixed_net;
    out.seed = seed;
    return out;
  }
  const std::vector<int> arities(f.dag.size(), arity);
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, {attempt});
    DiscreteBayesNet net = random_parameterization(f.dag, arities, s, concentration, f.latent);
    if (verify_perfect_map(net, observed, tol)) {
      out.net = std::move(net);
      out.seed = s;
      return out;
    }
    ++out.rejected;
    out.log.push_back("fixture " + f.name + ": seed " + std::to_string(s) +
                      " rejected by faithfulness screen");
  }
  throw SetupError("fixture " + f.name + ": no faithful parameterization in " +
                   std::to_string(max_retries + 1) + " attempts from seed " +
                   std::to_string(seed));
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw InvalidArgument("replicates must be >= 1");
  if (sample_sizes.empty()) throw InvalidArgument("sample_sizes must not be empty");
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] == 0) throw InvalidArgument("sample sizes must be positive");
    if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1])
      throw InvalidArgument("sample sizes must be strictly ascending");
  }
  if (!(ess > 0.0)) throw InvalidArgument("ess must be positive");
  if (!(faithfulness_tol >= 0.0)) throw InvalidArgument("faithfulness_tol must be >= 0");
  if (!(concentration > 0.0)) throw InvalidArgument("concentration must be positive");
  if (arity < 2) throw InvalidArgument("arity must be >= 2");
  for (double t : {posterior_threshold, low_threshold, blcd_threshold})
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("thresholds must lie in [0, 1]");
  if (required_successes > replicates)
    throw InvalidArgument("required_successes exceeds replicate count");
  if (max_blanket < 3) throw InvalidArgument("max_blanket must be >= 3");
  if (generator == "custom" && net_file.empty())
    throw InvalidArgument("custom generator needs net_file");
  if (!tetrad.empty() && tetrad.size() != 4) throw InvalidArgument("tetrad needs four names");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  try {
    if (!doc.is_object()) throw DataError("experiment config must be a JSON object");
    c.generator = doc.value("generator", c.generator);
    c.net_file = doc.value("net_file", c.net_file);
    if (!c.net_file.empty() && !doc.contains("generator")) c.generator = "custom";
    c.x = doc.value("x", c.x);
    c.z = doc.value("z", c.z);
    c.tetrad = doc.value("tetrad", c.tetrad);
    c.master_seed = doc.value("master_seed", c.master_seed);
    c.replicates = doc.value("replicates", c.replicates);
    c.sample_sizes = doc.value("sample_sizes", c.sample_sizes);
    c.ess = doc.value("ess", c.ess);
    c.faithfulness_tol = doc.value("faithfulness_tol", c.faithfulness_tol);
    c.concentration = doc.value("concentration", c.concentration);
    c.arity = doc.value("arity", c.arity);
    c.posterior_threshold = doc.value("posterior_threshold", c.posterior_threshold);
    c.low_threshold = doc.value("low_threshold", c.low_threshold);
    c.blcd_threshold = doc.value("blcd_threshold", c.blcd_threshold);
    c.required_successes = doc.value("required_successes", c.required_successes);
    c.max_seed_retries = doc.value("max_seed_retries", c.max_seed_retries);
    c.max_blanket = doc.value("max_blanket", c.max_blanket);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed experiment config: ") + e.what());
  }
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("invalid experiment config: ") + e.what());
  }
  return c;
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError("cannot parse '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const ExperimentConfig& c) {
  json doc = {{"generator", c.generator},
              {"x", c.x},
              {"z", c.z},
              {"master_seed", c.master_seed},
              {"replicates", c.replicates},
              {"sample_sizes", c.sample_sizes},
              {"ess", c.ess},
              {"faithfulness_tol", c.faithfulness_tol},
              {"concentration", c.concentration},
              {"arity", c.arity},
              {"posterior_threshold", c.posterior_threshold},
              {"low_threshold", c.low_threshold},
              {"blcd_threshold", c.blcd_threshold},
              {"required_successes", c.required_successes},
              {"max_seed_retries", c.max_seed_retries},
              {"max_blanket", c.max_blanket}};
  if (!c.net_file.empty()) doc["net_file"] = c.net_file;
  if (!c.tetrad.empty()) doc["tetrad"] = c.tetrad;
  return doc;
}

Fixture resolve_fixture(const ExperimentConfig& cfg) {
  if (cfg.generator != "custom") {
    Fixture f = make_fixture(cfg.generator);
    f.x = cfg.x;
    f.z = cfg.z;
    return f;
  }
  NetworkFile nf = read_network_file(cfg.net_file);
  Fixture f;
  f.name = "custom:" + cfg.net_file;
  f.dag = nf.dag;
  f.latent = nf.latent;
  f.x = cfg.x;
  f.z = cfg.z;
  f.fixed_net = nf.net;
  std::vector<std::string> obs;
  for (NodeId v = 0; v < f.dag.size(); ++v)
    if (!f.latent[v]) obs.push_back(f.dag.name(v));
  if (!cfg.tetrad.empty()) obs = cfg.tetrad;
  if (obs.size() != 4)
    throw DataError("custom net needs exactly four observed variables or an explicit tetrad");
  std::sort(obs.begin(), obs.end());
  f.tetrad = {obs[0], obs[1], obs[2], obs[3]};
  for (const auto& v : obs) {
    const auto id = f.dag.find(v);
    if (!id || f.latent[*id]) throw DataError("tetrad variable '" + v + "' is not observed");
  }
  if (!f.dag.has_node(f.x) || !f.dag.has_node(f.z))
    throw DataError("arc of interest names unknown variables");
  return f;
}

const SampleSizeSummary& ExperimentReport::summary(std::size_t m) const {
  for (const auto& s : summaries)
    if (s.m == m) return s;
  throw InvalidArgument("no summary for m = " + std::to_string(m));
}

ExperimentReport run_convergence_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Fixture fixture = resolve_fixture(cfg);
  const ScoreParams params{cfg.ess};
  const NodeSet tetrad_set(fixture.tetrad.begin(), fixture.tetrad.end());

  ExperimentReport report;
  report.config = cfg;
  report.fixture = fixture.name;
  report.has_expected_argmax = fixture.expected_argmax.has_value();

  // Generating nets, one per replicate, shared across sample sizes.
  std::vector<FaithfulNet> nets(cfg.replicates);
  parallel_for(cfg.replicates, [&](std::size_t r) {
    nets[r] = generate_faithful_net(fixture, cfg.arity, cfg.concentration,
                                    derive_seed(cfg.master_seed, {r}), cfg.faithfulness_tol,
                                    cfg.max_seed_retries);
  });
  for (const auto& n : nets)
    report.setup_log.insert(report.setup_log.end(), n.log.begin(), n.log.end());

  // The generating structure's EPYS status over the tetrad.
  const auto epys_labels = epys_holds(d_separation_signature(fixture.dag, tetrad_set), tetrad_set);
  const bool epys = epys_labels && epys_labels->x == fixture.x && epys_labels->z == fixture.z;

  const std::vector<Dag> candidates = tetrad_dags(fixture.tetrad);
  std::optional<std::size_t> expected_index;
  if (fixture.expected_argmax)
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (candidates[i] == *fixture.expected_argmax) expected_index = i;

  const std::size_t tasks = cfg.sample_sizes.size() * cfg.replicates;
  report.records.resize(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    const std::size_t mi = t / cfg.replicates;
    const std::size_t r = t % cfg.replicates;
    const std::size_t m = cfg.sample_sizes[mi];
    ReplicateRecord rec;
    rec.replicate = r;
    rec.m = m;
    rec.net_seed = nets[r].seed;
    rec.rejected_seeds = nets[r].rejected;
    rec.sample_seed = derive_seed(cfg.master_seed, {r, m});
    const Dataset data = forward_sample(nets[r].net, m, rec.sample_seed);
    const DiscoveryReport dr =
        y_posterior(data.select({fixture.tetrad.begin(), fixture.tetrad.end()}), params);
    rec.argmax_index = dr.argmax;
    const TetradClass cls = classify_tetrad(candidates[dr.argmax]);
    rec.argmax_class = cls.kind == TetradKind::YStructure ? "Y"
                       : cls.kind == TetradKind::NearY    ? "NearY"
                                                          : "Other";
    const YArc& arc = dr.arc(fixture.x, fixture.z);
    rec.p_xz = arc.posterior;
    rec.argmax_is_y = dr.argmax == arc.dag_index;
    rec.argmax_is_expected = expected_index && dr.argmax == *expected_index;
    rec.epys = epys;
    if (data.width() >= 4) {
      rec.blcd_arcs = blcd_search(data, params, cfg.blcd_threshold, cfg.max_blanket).arcs;
      rec.blcd_exact = rec.blcd_arcs.size() == 1 && rec.blcd_arcs[0].x == fixture.x &&
                       rec.blcd_arcs[0].z == fixture.z;
    }
    report.records[t] = std::move(rec);
  });

  for (std::size_t mi = 0; mi < cfg.sample_sizes.size(); ++mi) {
    SampleSizeSummary s;
    s.m = cfg.sample_sizes[mi];
    s.replicates = cfg.replicates;
    std::vector<double> ps;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      const auto& rec = report.records[mi * cfg.replicates + r];
      s.y_argmax += rec.argmax_is_y;
      s.expected_argmax += rec.argmax_is_expected;
      s.arc_above += rec.p_xz > cfg.posterior_threshold;
      s.arc_below += rec.p_xz < cfg.low_threshold;
      s.blcd_exact += rec.blcd_exact;
      ps.push_back(rec.p_xz);
    }
    double total = 0.0;
    for (double p : ps) total += p;
    s.mean_p_xz = total / static_cast<double>(ps.size());
    std::sort(ps.begin(), ps.end());
    const std::size_t h = ps.size() / 2;
    s.median_p_xz = ps.size() % 2 ? ps[h] : 0.5 * (ps[h - 1] + ps[h]);
    report.summaries.push_back(s);
  }
  return report;
}

json report_to_json(const ExperimentReport& r) {
  json doc;
  doc["config"] = config_to_json(r.config);
  doc["fixture"] = r.fixture;
  doc["setup_log"] = r.setup_log;
  doc["note"] =
      "P(X=>Z|D) is a model-averaged approximation; the convergence guarantees cover only the "
      "large-sample limit";
  doc["summaries"] = json::array();
  for (const auto& s : r.summaries) {
    json row = {{"m", s.m},
                {"replicates", s.replicates},
                {"y_argmax", s.y_argmax},
                {"arc_above_threshold", s.arc_above},
                {"arc_below_low_threshold", s.arc_below},
                {"blcd_exact", s.blcd_exact},
                {"mean_p_xz", s.mean_p_xz},
                {"median_p_xz", s.median_p_xz}};
    if (r.has_expected_argmax) row["expected_argmax"] = s.expected_argmax;
    doc["summaries"].push_back(std::move(row));
  }
  doc["replicates"] = json::array();
  for (const auto& rec : r.records) {
    json arcs = json::array();
    for (const auto& a : rec.blcd_arcs)
      arcs.push_back({{"x", a.x}, {"z", a.z}, {"posterior", a.posterior}});
    doc["replicates"].push_back({{"replicate", rec.replicate},
                                 {"m", rec.m},
                                 {"net_seed", rec.net_seed},
                                 {"sample_seed", rec.sample_seed},
                                 {"rejected_seeds", rec.rejected_seeds},
                                 {"argmax_index", rec.argmax_index},
                                 {"argmax_class", rec.argmax_class},
                                 {"argmax_is_y", rec.argmax_is_y},
                                 {"argmax_is_expected", rec.argmax_is_expected},
                                 {"p_xz", rec.p_xz},
                                 {"epys", rec.epys},
                                 {"blcd_arcs", std::move(arcs)},
                                 {"blcd_exact", rec.blcd_exact}});
  }
  return doc;
}

std::string report_to_table(const ExperimentReport& r) {
  std::ostringstream os;
  os << "fixture " << r.fixture << "  arc " << r.config.x << "->" << r.config.z << "  replicates "
     << r.config.replicates << "  master_seed " << r.config.master_seed << "\n";
  os << std::setw(8) << "m" << std::setw(10) << "y_argmax" << std::setw(10) << "expected"
     << std::setw(10) << "p>" + std::to_string(r.config.posterior_threshold).substr(0, 4)
     << std::setw(10) << "p<" + std::to_string(r.config.low_threshold).substr(0, 4)
     << std::setw(8) << "blcd" << std::setw(12) << "mean_p" << std::setw(12) << "median_p"
     << "\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& s : r.summaries) {
    auto frac = [&](std::size_t k) { return std::to_string(k) + "/" + std::to_string(s.replicates); };
    os << std::setw(8) << s.m << std::setw(10) << frac(s.y_argmax) << std::setw(10)
       << (r.has_expected_argmax ? frac(s.expected_argmax) : std::string("-")) << std::setw(10)
       << frac(s.arc_above) << std::setw(10) << frac(s.arc_below) << std::setw(8)
       << frac(s.blcd_exact) << std::setw(12) << s.mean_p_xz << std::setw(12) << s.median_p_xz
       << "\n";
  }
  return os.str();
}

}  // namespace ystruct
