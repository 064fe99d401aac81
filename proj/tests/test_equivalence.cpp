#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ystruct/equivalence.hpp"
#include "ystruct/error.hpp"

using namespace ystruct;
using namespace ystruct::testing;

namespace {
std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}
}  // namespace

TEST(EnumerateTest, CountsMatchBruteForce) {
  // Oracle: filter all 2^(n(n-1)) adjacency matrices for acyclicity.
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(enumerate_dags(names(n)).size(), oracle::brute_force_dag_count(n)) << n;
  EXPECT_EQ(enumerate_dags(names(1)).size(), 1u);
  EXPECT_EQ(enumerate_dags(names(2)).size(), 3u);
  EXPECT_EQ(enumerate_dags(names(3)).size(), 25u);
  EXPECT_EQ(enumerate_dags(names(4)).size(), 543u);
  EXPECT_EQ(enumerate_dags(names(5)).size(), 29281u);
}

TEST(EnumerateTest, DistinctDeterministicEmptyFirst) {
  const auto a = enumerate_dags(kTetradNames);
  const auto b = enumerate_dags(kTetradNames);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_EQ(a.front().edge_count(), 0u);
  std::set<std::vector<Edge>> seen;
  for (const auto& g : a) EXPECT_TRUE(seen.insert(g.edges()).second);
}

TEST(EnumerateTest, RangeErrors) {
  EXPECT_THROW(enumerate_dags({}), InvalidArgument);
  EXPECT_THROW(enumerate_dags(names(6)), InvalidArgument);
  EXPECT_THROW(equivalence_classes(names(5)), InvalidArgument);
}

TEST(MarkovEquivalentTest, Examples) {
  const Dag chain({"A", "B", "C"}, std::vector<Edge>{{"A", "B"}, {"B", "C"}});
  const Dag reversed({"A", "B", "C"}, std::vector<Edge>{{"C", "B"}, {"B", "A"}});
  EXPECT_TRUE(markov_equivalent(chain, reversed));
  EXPECT_EQ(oracle::naive_signature(chain, chain.node_set()),
            oracle::naive_signature(reversed, reversed.node_set()));
  EXPECT_TRUE(markov_equivalent(y_dag(), y_dag()));
  const Dag collider({"A", "B", "C"}, std::vector<Edge>{{"A", "B"}, {"C", "B"}});
  EXPECT_FALSE(markov_equivalent(chain, collider));
  EXPECT_THROW(markov_equivalent(chain, y_dag()), InvalidArgument);
}

TEST(MarkovEquivalentTest, YDagIsAlone) {
  std::size_t equivalent = 0;
  for_each_dag(kTetradNames, [&](const Dag& g) { equivalent += markov_equivalent(g, y_dag()); });
  EXPECT_EQ(equivalent, 1u);
}

TEST(EquivalenceClassesTest, Counts) {
  const auto two = equivalence_classes(names(2));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].members.size(), 1u);
  EXPECT_EQ(two[0].representative.edge_count(), 0u);
  EXPECT_EQ(two[1].members.size(), 2u);

  const auto four = equivalence_classes(kTetradNames);
  EXPECT_EQ(four.size(), 185u);
  std::size_t total = 0;
  for (const auto& c : four) {
    total += c.members.size();
    EXPECT_EQ(c.representative, c.members.front());
  }
  EXPECT_EQ(total, 543u);
  for (std::size_t i = 1; i < four.size(); ++i)
    EXPECT_LT(four[i - 1].member_indices.front(), four[i].member_indices.front());
}

TEST(EquivalenceClassesTest, YAndNearYClassesAreSingletons) {
  for (const auto& c : equivalence_classes(kTetradNames)) {
    for (const auto& m : c.members) {
      if (m == y_dag() || m == near_y_dag()) EXPECT_EQ(c.members.size(), 1u);
    }
  }
}

TEST(EquivalenceProperty, EquivalenceRelationOnRandomTriples) {
  const auto dags = enumerate_dags(kTetradNames);
  std::mt19937_64 rng(11);
  // Bias draws towards equivalent pairs by sampling within classes half the time.
  const auto classes = equivalence_classes(kTetradNames);
  std::uniform_int_distribution<std::size_t> any(0, dags.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_class(0, classes.size() - 1);
  for (int trial = 0; trial < 3000; ++trial) {
    const Dag* g[3];
    if (trial % 2) {
      const auto& c = classes[pick_class(rng)];
      std::uniform_int_distribution<std::size_t> m(0, c.members.size() - 1);
      for (auto& p : g) p = &c.members[m(rng)];
    } else {
      for (auto& p : g) p = &dags[any(rng)];
    }
    EXPECT_TRUE(markov_equivalent(*g[0], *g[0]));
    EXPECT_EQ(markov_equivalent(*g[0], *g[1]), markov_equivalent(*g[1], *g[0]));
    if (markov_equivalent(*g[0], *g[1]) && markov_equivalent(*g[1], *g[2]))
      EXPECT_TRUE(markov_equivalent(*g[0], *g[2]));
  }
}

TEST(EquivalenceProperty, ThreeNodeCriterionMatchesSignatures) {
  const auto dags = enumerate_dags(names(3));
  for (std::size_t i = 0; i < dags.size(); ++i)
    for (std::size_t j = 0; j < dags.size(); ++j)
      EXPECT_EQ(markov_equivalent(dags[i], dags[j]),
                oracle::naive_signature(dags[i], dags[i].node_set()) ==
                    oracle::naive_signature(dags[j], dags[j].node_set()));
}
