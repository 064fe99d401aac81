#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ystruct/bayes_net.hpp"
#include "ystruct/discovery.hpp"
#include "ystruct/error.hpp"
#include "ystruct/graph.hpp"

namespace ystruct {

// No faithful parameterization found within the retry budget.
class SetupError : public Error {
 public:
  using Error::Error;
};

// splitmix64 fold of `parts` into `master`.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

// Generating structure for simulation studies.
struct Fixture {
  std::string name;
  Dag dag;
  std::vector<bool> latent;
  std::string x = "X";  // arc of interest x -> z
  std::string z = "Z";
  Tetrad tetrad;        // observed tetrad to score, sorted
  // Observed-variable DAG expected to win the 543-way comparison in the
  // large sample limit, when one exists.
  std::optional<Dag> expected_argmax;
  // Fully specified parameters (custom file fixtures only).
  std::optional<DiscreteBayesNet> fixed_net;
};

// y_net, near_y_net, latent_confounder_net, epys_latent_net,
// independent_net. Throws InvalidArgument for other names.
Fixture make_fixture(std::string_view name);
std::vector<std::string> fixture_names();

struct FaithfulNet {
  DiscreteBayesNet net;
  std::uint64_t seed = 0;
  std::size_t rejected = 0;
  std::vector<std::string> log;  // one line per rejected seed
};

// Draws seeded parameterizations until one passes verify_perfect_map over
// the fixture's observed variables at `tol`. Throws SetupError after
// `max_retries` rejections.
FaithfulNet generate_faithful_net(const Fixture& f, int arity, double concentration,
                                  std::uint64_t seed, double tol, std::size_t max_retries);

struct ExperimentConfig {
  std::string generator = "y_net";  // fixture name or "custom"
  std::string net_file;              // for "custom"
  std::string x = "X";
  std::string z = "Z";
  std::vector<std::string> tetrad;   // custom nets with more than 4 observed
  std::uint64_t master_seed = 1;
  std::size_t replicates = 20;
  std::vector<std::size_t> sample_sizes{100, 1000, 10000, 50000};
  double ess = 1.0;
  double faithfulness_tol = 1e-6;
  double concentration = 1.0;
  int arity = 2;
  double posterior_threshold = 0.9;
  double low_threshold = 0.1;
  double blcd_threshold = 0.5;
  std::size_t required_successes = 18;
  std::size_t max_seed_retries = 200;
  std::size_t max_blanket = kDefaultMaxBlanket;

  // Throws InvalidArgument on an inconsistent configuration.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig read_config_file(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Resolves generator / net_file into a fixture.
Fixture resolve_fixture(const ExperimentConfig& cfg);

struct ReplicateRecord {
  std::size_t replicate = 0;
  std::size_t m = 0;
  std::uint64_t net_seed = 0;
  std::uint64_t sample_seed = 0;
  std::size_t rejected_seeds = 0;
  std::size_t argmax_index = 0;
  std::string argmax_class;      // "Y", "NearY" or "Other"
  bool argmax_is_y = false;      // argmax is the Y DAG with sink arc x -> z
  bool argmax_is_expected = false;
  double p_xz = 0.0;
  bool epys = false;             // generating net has an EPYS with sink x -> z
  std::vector<ArcPosterior> blcd_arcs;
  bool blcd_exact = false;       // blcd arcs are exactly [(x, z)]
};

struct SampleSizeSummary {
  std::size_t m = 0;
  std::size_t replicates = 0;
  std::size_t y_argmax = 0;
  std::size_t expected_argmax = 0;
  std::size_t arc_above = 0;  // p_xz > posterior_threshold
  std::size_t arc_below = 0;  // p_xz < low_threshold
  std::size_t blcd_exact = 0;
  double mean_p_xz = 0.0;
  double median_p_xz = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string fixture;
  bool has_expected_argmax = false;
  std::vector<std::string> setup_log;
  std::vector<ReplicateRecord> records;  // by (m, replicate)
  std::vector<SampleSizeSummary> summaries;

  const SampleSizeSummary& summary(std::size_t m) const;
};

// Fully deterministic given the configuration; replicates run concurrently.
ExperimentReport run_convergence_experiment(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const ExperimentReport& r);
std::string report_to_table(const ExperimentReport& r);

}  // namespace ystruct
