#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ystruct/bayes_net.hpp"
#include "ystruct/error.hpp"
#include "ystruct/scoring.hpp"

using namespace ystruct;
using namespace ystruct::testing;

namespace {
const double kPrior = -std::log(543.0);
}

TEST(BdeTest, HandComputedSingleVariable) {
  const Dag g({"A"});
  const ScoreParams p;
  EXPECT_NEAR(bde_log_score(g, Dataset({"A"}, {2}, {1}), p), kPrior + std::log(0.5), 1e-12);
  EXPECT_NEAR(bde_log_score(g, Dataset({"A"}, {2}, {0, 0}), p), kPrior + std::log(0.375), 1e-12);
  EXPECT_NEAR(bde_log_score(g, Dataset({"A"}, {2}), p), kPrior, 1e-15);
}

TEST(BdeTest, MatchesSequentialOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Dag g = oracle::random_dag(rng, 4, 0.5);
    std::vector<int> ar(4);
    for (auto& r : ar) r = 2 + static_cast<int>(rng() % 2);
    const auto net = random_parameterization(g, ar, rng());
    const Dataset d = forward_sample(net, 1 + rng() % 300, rng());
    for (double ess : {0.5, 1.0, 10.0}) {
      ScoreParams p;
      p.ess = ess;
      EXPECT_NEAR(bde_log_score(g, d, p), p.log_structure_prior + oracle::sequential_log_marginal(g, d, ess),
                  1e-8);
    }
  }
}

TEST(BdeTest, ScoreEquivalentForReversedEdge) {
  const auto net = random_parameterization(Dag({"A", "B"}, std::vector<Edge>{{"A", "B"}}),
                                           {3, 2}, 4);
  const Dataset d = forward_sample(net, 500, 8);
  const ScoreParams p;
  EXPECT_NEAR(bde_log_score(Dag({"A", "B"}, std::vector<Edge>{{"A", "B"}}), d, p),
              bde_log_score(Dag({"A", "B"}, std::vector<Edge>{{"B", "A"}}), d, p), 1e-9);
}

TEST(BdeTest, ColumnsMatchedByName) {
  const auto net = random_parameterization(y_dag(), std::vector<int>(4, 2), 3);
  const Dataset d = forward_sample(net, 100, 1);
  const ScoreParams p;
  EXPECT_DOUBLE_EQ(bde_log_score(y_dag(), d, p),
                   bde_log_score(y_dag(), d.select({"Z", "W1", "X", "W2"}), p));
  EXPECT_THROW(bde_log_score(Dag({"Q"}), d, p), DataError);
}

TEST(BdeTest, ParamValidation) {
  ScoreParams p;
  p.ess = 0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.ess = std::nan("");
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.ess = 2;
  EXPECT_NO_THROW(p.validate());
}

TEST(BdeTest, EmptyDataGivesUniformPosterior) {
  std::vector<Dag> dags{Dag(kTetradNames), y_dag(), near_y_dag()};
  const auto post = posterior_over_dags(dags, Dataset(kTetradNames, {2, 2, 2, 2}), ScoreParams{});
  for (double q : post) EXPECT_NEAR(q, 1.0 / 3.0, 1e-12);
}

TEST(BdeTest, Decomposable) {
  const auto net = random_parameterization(near_y_dag(), std::vector<int>(4, 2), 10);
  const Dataset d = forward_sample(net, 400, 2);
  const CountTable t = count_table(near_y_dag(), d);
  double sum = kPrior;
  for (const auto& f : t.families) sum += family_log_score(f, 1.0);
  EXPECT_NEAR(bde_log_score(near_y_dag(), d, ScoreParams{}), sum, 1e-10);
  std::uint64_t total = 0;
  for (auto c : t.families[0].counts) total += c;
  EXPECT_EQ(total, 400u);
}

TEST(NormalizeTest, ShiftInvariantAndStable) {
  const std::vector<double> s{-1000.0, -1001.0, -1002.5};
  std::vector<double> shifted = s;
  for (auto& v : shifted) v += 123456.0;
  const auto a = normalize_log_scores(s);
  const auto b = normalize_log_scores(shifted);
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-12);
    total += a[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(a[0] / a[1], std::exp(1.0), 1e-9);
}

TEST(LogGammaTest, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-14);
  EXPECT_NEAR(log_gamma(10.0), std::log(362880.0), 1e-12);
}
