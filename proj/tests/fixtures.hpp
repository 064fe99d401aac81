#pragma once

#include <vector>

#include "ystruct/graph.hpp"

namespace ystruct::testing {

inline const std::vector<std::string> kTetradNames{"W1", "W2", "X", "Z"};

inline Dag y_dag() {
  return Dag(kTetradNames, std::vector<Edge>{{"W1", "X"}, {"W2", "X"}, {"X", "Z"}});
}

inline Dag near_y_dag() {
  return Dag(kTetradNames, std::vector<Edge>{{"W1", "X"}, {"W2", "X"}, {"X", "Z"}, {"W1", "Z"}});
}

// H1 -> W1, H1 -> X, H2 -> W2, H2 -> X, X -> Z with H1, H2 latent.
inline Dag latent_y_dag() {
  return Dag({"H1", "H2", "W1", "W2", "X", "Z"},
             std::vector<Edge>{{"H1", "W1"}, {"H1", "X"}, {"H2", "W2"}, {"H2", "X"}, {"X", "Z"}});
}

// H -> X, H -> Z, W1 -> X, W2 -> X with H latent.
inline Dag latent_confounder_dag() {
  return Dag({"H", "W1", "W2", "X", "Z"},
             std::vector<Edge>{{"H", "X"}, {"H", "Z"}, {"W1", "X"}, {"W2", "X"}});
}

inline NodeSet tetrad_set() { return NodeSet(kTetradNames.begin(), kTetradNames.end()); }

}  // namespace ystruct::testing
