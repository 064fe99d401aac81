#pragma once

#include <array>
#include <string>
#include <vector>

#include "ystruct/dataset.hpp"
#include "ystruct/graph.hpp"
#include "ystruct/scoring.hpp"

namespace ystruct {

using Tetrad = std::array<std::string, 4>;

// The 543 four-node structures in canonical enumeration order over the
// given (sorted) names. Index i here is index i of every posterior vector.
std::vector<Dag> tetrad_dags(const Tetrad& names);

// Posterior mass of the Y structure whose sink arc is x -> z.
struct YArc {
  std::string x;
  std::string z;
  std::string w1;
  std::string w2;
  std::size_t dag_index = 0;
  double posterior = 0.0;
};

struct DiscoveryReport {
  Tetrad tetrad;                  // sorted
  std::size_t cases = 0;
  std::vector<double> log_scores;  // log P(S_i, D), canonical order
  std::vector<double> posteriors;  // normalized, canonical order
  std::vector<YArc> y_arcs;        // 12 entries, one per ordered (x, z)
  std::size_t argmax = 0;

  const YArc& arc(std::string_view x, std::string_view z) const;
};

// Scores all 543 DAGs over a four-variable dataset (columns in any order)
// and reads off P(X => Z | D) for every ordered pair. Throws InvalidArgument
// unless the dataset has exactly four columns.
DiscoveryReport y_posterior(const Dataset& d, const ScoreParams& p);

struct MbStep {
  enum class Kind { Add, Remove };
  Kind kind;
  std::string variable;
  double score = 0.0;  // family log score after the step
};

struct MbEstimate {
  std::string target;
  NodeSet members;
  double initial_score = 0.0;
  std::vector<MbStep> trace;
};

// Greedy forward-backward selection on the BDe score of `x`'s family with
// the candidate set as parents. Ties go to the lexicographically smaller
// name. Throws InvalidArgument when max_size < 3 or the dataset has fewer
// than four variables.
MbEstimate estimate_markov_blanket(const Dataset& d, std::string_view x, const ScoreParams& p,
                                   std::size_t max_size);

struct ArcPosterior {
  std::string x;
  std::string z;
  double posterior = 0.0;
  Tetrad tetrad;  // where the maximum was attained

  friend bool operator==(const ArcPosterior&, const ArcPosterior&) = default;
};

struct SearchResult {
  std::vector<ArcPosterior> arcs;   // posterior desc, then (x, z)
  std::vector<MbEstimate> blankets;  // empty for the exhaustive search
  std::vector<Tetrad> tetrads;       // every tetrad scored, sorted
};

inline constexpr std::size_t kDefaultMaxBlanket = 6;

// Scores the given tetrads and keeps every ordered arc with posterior >=
// threshold, deduplicated to the maximum per (x, z).
SearchResult search_tetrads(const Dataset& d, const ScoreParams& p, double threshold,
                            std::vector<Tetrad> tetrads);

// Markov-blanket-guided search: for each variable x, every 3-subset of its
// estimated blanket together with x forms a tetrad.
SearchResult blcd_search(const Dataset& d, const ScoreParams& p, double threshold,
                         std::size_t max_blanket = kDefaultMaxBlanket);

// All C(n, 4) tetrads.
SearchResult exhaustive_search(const Dataset& d, const ScoreParams& p, double threshold);

}  // namespace ystruct
