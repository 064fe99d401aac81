#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ystruct/bayes_net.hpp"
#include "ystruct/dataset.hpp"
#include "ystruct/discovery.hpp"
#include "ystruct/graph.hpp"

namespace ystruct {

// Graph / network document:
//
//   {
//     "variables": [{"name": "W1", "arity": 2, "latent": false}, ...],
//     "edges": [["W1", "X"], ...],
//     "cpts": {"X": [[p00, p01], [p10, p11], ...], ...}
//   }
//
// `arity` defaults to 2 and `latent` to false. `cpts` is optional; when
// present it must cover every node, one row per parent configuration in
// lexicographic parent-value order with parents taken in `variables` order.
struct NetworkFile {
  Dag dag;
  std::vector<int> arities;
  std::vector<bool> latent;
  std::optional<DiscreteBayesNet> net;
};

// Throws DataError on any schema violation or graph error.
NetworkFile parse_network(const nlohmann::json& doc);
NetworkFile read_network_file(const std::filesystem::path& path);

nlohmann::json network_to_json(const DiscreteBayesNet& net);
nlohmann::json graph_to_json(const Dag& dag, const std::vector<int>& arities = {},
                             const std::vector<bool>& latent = {});

// CSV: header row of variable names, then integer category codes, no
// missing cells. Arity of a column is the matching entry of `arities` when
// given (values at or above it are a DataError), otherwise max value + 1
// with a floor of 2. Throws DataError on malformed input.
Dataset read_csv(std::istream& in, const std::vector<std::pair<std::string, int>>& arities = {});
Dataset read_csv_file(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, int>>& arities = {});
void write_csv(std::ostream& out, const Dataset& d);
void write_csv_file(const std::filesystem::path& path, const Dataset& d);

nlohmann::json params_to_json(const ScoreParams& p);
nlohmann::json report_to_json(const DiscoveryReport& r, bool include_posteriors);
nlohmann::json search_to_json(const SearchResult& r);

}  // namespace ystruct
