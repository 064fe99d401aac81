#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ystruct/equivalence.hpp"
#include "ystruct/error.hpp"
#include "ystruct/pag.hpp"

using namespace ystruct;
using namespace ystruct::testing;

namespace {

Pag y_pag() { return build_pag_from_witnesses({y_dag(), latent_y_dag()}, tetrad_set()); }

void expect_marks(const Pag& p, const std::string& a, const std::string& b, EndpointMark at_a,
                  EndpointMark at_b) {
  const auto e = p.edge(a, b);
  ASSERT_TRUE(e.has_value()) << a << " " << b;
  EXPECT_EQ(e->at_a, at_a) << a << " " << b;
  EXPECT_EQ(e->at_b, at_b) << a << " " << b;
}

}  // namespace

TEST(PagTest, YStructureWitnesses) {
  const Pag p = y_pag();
  EXPECT_EQ(p.edges().size(), 3u);
  expect_marks(p, "W1", "X", EndpointMark::Circle, EndpointMark::Head);
  expect_marks(p, "W2", "X", EndpointMark::Circle, EndpointMark::Head);
  expect_marks(p, "X", "Z", EndpointMark::Tail, EndpointMark::Head);
  expect_marks(p, "Z", "X", EndpointMark::Head, EndpointMark::Tail);
  EXPECT_FALSE(p.edge("W1", "Z").has_value());
  EXPECT_FALSE(p.edge("W1", "W2").has_value());
  EXPECT_EQ(p.circle_count(), 2u);
  EXPECT_EQ(render(p), "W1 o-> X\nW2 o-> X\nX --> Z\n");
}

TEST(PagTest, SingleWitnessHasNoCircles) {
  for (const Dag& g : {y_dag(), near_y_dag()}) EXPECT_EQ(pag_of(g).circle_count(), 0u);
  const Dag ab({"A", "B"}, std::vector<Edge>{{"A", "B"}});
  const Dag ba({"A", "B"}, std::vector<Edge>{{"B", "A"}});
  const Pag both = build_pag_from_witnesses({ab, ba}, {"A", "B"});
  expect_marks(both, "A", "B", EndpointMark::Circle, EndpointMark::Circle);
  EXPECT_EQ(render(both), "A o-o B\n");
}

TEST(PagTest, LatentConfounderGivesBidirectedEdge) {
  const Dag g({"H", "A", "B"}, std::vector<Edge>{{"H", "A"}, {"H", "B"}});
  const Pag p = build_pag_from_witnesses({g}, {"A", "B"});
  expect_marks(p, "A", "B", EndpointMark::Head, EndpointMark::Head);
  EXPECT_EQ(render(p), "A <-> B\n");
}

TEST(PagTest, Errors) {
  EXPECT_THROW(build_pag_from_witnesses({}, tetrad_set()), InvalidArgument);
  EXPECT_THROW(build_pag_from_witnesses({y_dag()}, {"W1", "Q"}), InvalidArgument);
  EXPECT_THROW(build_pag_from_witnesses({y_dag(), near_y_dag()}, tetrad_set()),
               SignatureMismatch);
  EXPECT_THROW(Pag({"A", "B"}, {{"A", "A"}}, {}), InvalidArgument);
  EXPECT_THROW(Pag({"A", "B"}, {{"A", "B"}, {"B", "A"}}, {}), InvalidArgument);
  EXPECT_THROW(Pag({"A", "B"}, {{"A", "C"}}, {}), InvalidArgument);
}

TEST(PagTest, HandMadeRendering) {
  const Pag p({"A", "B", "C"},
              {{"A", "B", EndpointMark::Tail, EndpointMark::Tail},
               {"B", "C", EndpointMark::Head, EndpointMark::Circle}},
              {});
  EXPECT_EQ(render(p), "A --- B\nC o-> B\n");
  const Pag q({"A", "B"}, {{"A", "B", EndpointMark::Tail, EndpointMark::Circle}}, {});
  EXPECT_EQ(render(q), "A --o B\n");
}

TEST(IsDagPagTest, YPagIsRealizedByTheYDag) {
  const auto g = is_dag_pag(y_pag());
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, y_dag());
}

TEST(IsDagPagTest, UnrealizableSignature) {
  // A and B adjacent, B and C adjacent, yet A|C both marginally and given B.
  const DSepSignature sig{{"A", "C", {}}, {"A", "C", {"B"}}};
  const Pag p({"A", "B", "C"},
              {{"A", "B", EndpointMark::Circle, EndpointMark::Circle},
               {"B", "C", EndpointMark::Circle, EndpointMark::Circle}},
              sig);
  EXPECT_FALSE(is_dag_pag(p).has_value());
}

TEST(IsDagPagTest, CircleFreePagOfAnyDagIsThatDag) {
  for_each_dag({"A", "B", "C"}, [](const Dag& g) {
    const auto back = is_dag_pag(pag_of(g));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, g);
  });
}

TEST(EpysTest, SignatureHasFiveEntries) {
  const auto sig = epys_signature({"W1", "W2", "X", "Z"});
  EXPECT_EQ(sig.size(), 5u);
  EXPECT_EQ(sig, d_separation_signature(y_dag()));
}

TEST(EpysTest, ExactlyTheTwelveYDags) {
  std::size_t hits = 0;
  for_each_dag(kTetradNames, [&](const Dag& g) {
    const auto l = epys_holds(d_separation_signature(g), tetrad_set());
    const TetradClass c = classify_tetrad(g);
    EXPECT_EQ(l.has_value(), c.kind == TetradKind::YStructure) << to_string(g);
    if (l) {
      ++hits;
      EXPECT_LT(l->w1, l->w2);
      EXPECT_EQ(l->x, c.x);
      EXPECT_EQ(l->z, c.z);
    }
  });
  EXPECT_EQ(hits, 12u);
}

TEST(EpysTest, Examples) {
  EXPECT_FALSE(epys_holds(d_separation_signature(near_y_dag()), tetrad_set()));
  const auto latent = epys_holds(d_separation_signature(latent_y_dag(), tetrad_set()), tetrad_set());
  ASSERT_TRUE(latent.has_value());
  EXPECT_EQ(*latent, (YLabeling{"W1", "W2", "X", "Z"}));
  EXPECT_FALSE(epys_holds(d_separation_signature(Dag(kTetradNames)), tetrad_set()));
  EXPECT_FALSE(epys_holds(d_separation_signature(latent_confounder_dag(), tetrad_set()),
                          tetrad_set()));
  EXPECT_THROW(epys_holds({}, {"A", "B", "C"}), InvalidArgument);
}

TEST(PagProperty, MarksRefineWithFewerWitnesses) {
  // Adding witnesses can only turn definite marks into circles, never flip
  // a tail into a head.
  const auto classes = equivalence_classes(kTetradNames);
  for (const auto& c : classes) {
    if (c.members.size() < 2) continue;
    const Pag all = build_pag_from_witnesses(c.members, tetrad_set());
    const Pag one = pag_of(c.members.front());
    ASSERT_EQ(all.edges().size(), one.edges().size());
    EXPECT_LE(one.circle_count(), all.circle_count());
    for (std::size_t i = 0; i < all.edges().size(); ++i) {
      const auto& a = all.edges()[i];
      const auto& o = one.edges()[i];
      if (a.at_a != EndpointMark::Circle) EXPECT_EQ(a.at_a, o.at_a);
      if (a.at_b != EndpointMark::Circle) EXPECT_EQ(a.at_b, o.at_b);
    }
    const auto back = is_dag_pag(all);
    ASSERT_TRUE(back.has_value());
    EXPECT_TRUE(markov_equivalent(*back, c.representative));
  }
}

TEST(PagProperty, AdjacencyMatchesSkeletonOnRandomDags) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = oracle::random_dag(rng, 5, 0.4);
    const Pag p = pag_of(g);
    for (NodeId a = 0; a < g.size(); ++a)
      for (NodeId b = a + 1; b < g.size(); ++b)
        EXPECT_EQ(p.edge(g.name(a), g.name(b)).has_value(), g.adjacent(a, b));
  }
}
