#include "ystruct/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ystruct/error.hpp"

namespace ystruct {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

NetworkFile parse_network(const json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("variables") || !doc.at("variables").is_array())
      throw DataError("network document needs a 'variables' array");
    std::vector<std::string> names;
    NetworkFile nf;
    for (const auto& v : doc.at("variables")) {
      if (v.is_string()) {
        names.push_back(v.get<std::string>());
        nf.arities.push_back(2);
        nf.latent.push_back(false);
        continue;
      }
      names.push_back(v.at("name").get<std::string>());
      nf.arities.push_back(v.value("arity", 2));
      nf.latent.push_back(v.value("latent", false));
      if (nf.arities.back() < 2) throw DataError("arity of '" + names.back() + "' must be >= 2");
    }
    nf.dag = Dag(names);
    if (doc.contains("edges")) {
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw DataError("edges must be [parent, child] pairs");
        nf.dag.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
      }
    }
    if (doc.contains("cpts") && !doc.at("cpts").is_null()) {
      const auto& cpts = doc.at("cpts");
      std::vector<Cpt> tables;
      for (NodeId v = 0; v < nf.dag.size(); ++v) {
        const auto& name = nf.dag.name(v);
        if (!cpts.contains(name)) throw DataError("missing CPT for '" + name + "'");
        Cpt t;
        t.states = static_cast<std::size_t>(nf.arities[v]);
        for (const auto& row : cpts.at(name)) {
          if (!row.is_array() || row.size() != t.states)
            throw DataError("CPT row of '" + name + "' has the wrong length");
          for (const auto& p : row) t.probs.push_back(p.get<double>());
          ++t.rows;
        }
        tables.push_back(std::move(t));
      }
      nf.net = DiscreteBayesNet(nf.dag, nf.arities, nf.latent, std::move(tables));
    }
    return nf;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed network document: ") + e.what());
  } catch (const GraphError& e) {
    throw DataError(e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
}

NetworkFile read_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError("cannot parse '" + path.string() + "': " + e.what());
  }
  return parse_network(doc);
}

json graph_to_json(const Dag& dag, const std::vector<int>& arities,
                   const std::vector<bool>& latent) {
  json doc;
  doc["variables"] = json::array();
  for (NodeId v = 0; v < dag.size(); ++v) {
    doc["variables"].push_back({{"name", dag.name(v)},
                                {"arity", arities.empty() ? 2 : arities.at(v)},
                                {"latent", latent.empty() ? false : static_cast<bool>(latent.at(v))}});
  }
  doc["edges"] = json::array();
  for (const auto& e : dag.edges()) doc["edges"].push_back({e.parent, e.child});
  return doc;
}

json network_to_json(const DiscreteBayesNet& net) {
  json doc = graph_to_json(net.dag(), net.arities(), net.latent_flags());
  json cpts = json::object();
  for (NodeId v = 0; v < net.size(); ++v) {
    json rows = json::array();
    for (std::size_t r = 0; r < net.cpt(v).rows; ++r) {
      const auto row = net.cpt(v).row(r);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    cpts[net.dag().name(v)] = std::move(rows);
  }
  doc["cpts"] = std::move(cpts);
  return doc;
}

Dataset read_csv(std::istream& in, const std::vector<std::pair<std::string, int>>& arities) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV input is empty (no header row)");
  const std::vector<std::string> names = split(line);
  for (const auto& n : names)
    if (n.empty()) throw DataError("CSV header has an empty variable name");

  std::vector<int> fixed(names.size(), 0);
  for (const auto& [name, r] : arities)
    for (std::size_t c = 0; c < names.size(); ++c)
      if (names[c] == name) fixed[c] = r;

  std::vector<Value> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != names.size())
      throw DataError("CSV line " + std::to_string(lineno) + " has " +
                      std::to_string(fields.size()) + " cells, expected " +
                      std::to_string(names.size()));
    for (const auto& f : fields) {
      Value v = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || v < 0)
        throw DataError("CSV line " + std::to_string(lineno) + ": '" + f +
                        "' is not a category code");
      cells.push_back(v);
    }
  }

  std::vector<int> ar(names.size(), 2);
  for (std::size_t c = 0; c < names.size(); ++c) {
    int top = 0;
    for (std::size_t i = c; i < cells.size(); i += names.size()) top = std::max(top, cells[i]);
    if (fixed[c] != 0) {
      if (top >= fixed[c])
        throw DataError("arity mismatch: '" + names[c] + "' has value " + std::to_string(top) +
                        " but arity " + std::to_string(fixed[c]));
      ar[c] = fixed[c];
    } else {
      ar[c] = std::max(2, top + 1);
    }
  }
  try {
    return Dataset(names, std::move(ar), std::move(cells));
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
}

Dataset read_csv_file(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, int>>& arities) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_csv(in, arities);
}

void write_csv(std::ostream& out, const Dataset& d) {
  for (std::size_t c = 0; c < d.width(); ++c) out << (c ? "," : "") << d.variables()[c];
  out << '\n';
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.width(); ++c) out << (c ? "," : "") << d.at(r, c);
    out << '\n';
  }
}

void write_csv_file(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_csv(out, d);
}

json params_to_json(const ScoreParams& p) {
  return {{"ess", p.ess}, {"log_structure_prior", p.log_structure_prior}};
}

json report_to_json(const DiscoveryReport& r, bool include_posteriors) {
  json doc;
  doc["tetrad"] = std::vector<std::string>(r.tetrad.begin(), r.tetrad.end());
  doc["cases"] = r.cases;
  doc["argmax_index"] = r.argmax;
  doc["argmax_posterior"] = r.posteriors.at(r.argmax);
  doc["y_arcs"] = json::array();
  for (const auto& a : r.y_arcs)
    doc["y_arcs"].push_back({{"x", a.x},
                             {"z", a.z},
                             {"w1", a.w1},
                             {"w2", a.w2},
                             {"dag_index", a.dag_index},
                             {"posterior", a.posterior}});
  if (include_posteriors) {
    doc["posteriors"] = r.posteriors;
    doc["log_scores"] = r.log_scores;
  }
  return doc;
}

json search_to_json(const SearchResult& r) {
  json doc;
  doc["arcs"] = json::array();
  for (const auto& a : r.arcs)
    doc["arcs"].push_back({{"x", a.x},
                           {"z", a.z},
                           {"posterior", a.posterior},
                           {"tetrad", std::vector<std::string>(a.tetrad.begin(), a.tetrad.end())}});
  doc["dedup_rule"] = "maximum posterior per ordered (x, z) pair across scored tetrads";
  doc["tetrads_scored"] = r.tetrads.size();
  doc["markov_blankets"] = json::array();
  for (const auto& mb : r.blankets) {
    json trace = json::array();
    for (const auto& s : mb.trace)
      trace.push_back({{"step", s.kind == MbStep::Kind::Add ? "add" : "remove"},
                       {"variable", s.variable},
                       {"score", s.score}});
    doc["markov_blankets"].push_back({{"target", mb.target},
                                      {"members", mb.members},
                                      {"initial_score", mb.initial_score},
                                      {"trace", std::move(trace)}});
  }
  return doc;
}

}  // namespace ystruct
