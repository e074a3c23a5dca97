#include <gtest/gtest.h>

#include "flowcouple/dominance.hpp"
#include "flowcouple/error.hpp"
#include "flowcouple/lattice.hpp"
#include "flowcouple/random_instances.hpp"
#include "support/oracles.hpp"

using namespace flowcouple;

namespace {

PartialOrderRelation chain_ab() { return PartialOrderRelation(make_vertex_set({"a", "b"}), std::vector<std::pair<Vertex, Vertex>>{{0, 1}}); }

Measure w(const VertexSetPtr& vs, std::vector<Rational> weights) { return Measure(vs, std::move(weights)); }

// Diamond A < B < D, A < C < D.
DigraphPtr diamond() {
  return share(Digraph::from_names({"A", "B", "C", "D"}, {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}}));
}

std::pair<Measure, Measure> random_pair(random::Rng& rng, const PartialOrderRelation& rel) {
  if (random::coin(rng, 0.5)) return random::random_dominated_pair(rng, rel);
  return {random::random_probability(rng, rel.vertex_set()), random::random_probability(rng, rel.vertex_set())};
}

void expect_certificate(const DominanceVerdict& v, const Measure& mu1, const Measure& mu2) {
  if (v.dominates) {
    if (const Flow* q = v.flow()) {
      EXPECT_EQ(oracle::divergence(*q), difference(mu1, mu2).weights());
    }
  } else {
    ASSERT_NE(v.up_set(), nullptr);
    EXPECT_GT(mu1.mass_of(*v.up_set()), mu2.mass_of(*v.up_set()));
  }
}

}  // namespace

TEST(Oracle, EqualMeasuresDominate) {
  auto rel = chain_ab();
  Measure m = w(rel.vertex_set(), {Rational(1, 3), Rational(2, 3)});
  EXPECT_TRUE(dominates_oracle(m, m, rel).dominates);
}

TEST(Oracle, ReversedChainWitness) {
  auto rel = chain_ab();
  auto vs = rel.vertex_set();
  auto v = dominates_oracle(Measure::dirac(vs, 1), Measure::dirac(vs, 0), rel);
  EXPECT_FALSE(v.dominates);
  ASSERT_NE(v.up_set(), nullptr);
  EXPECT_EQ(*v.up_set(), (UpSet{1}));
}

TEST(Oracle, UnequalMassRejected) {
  auto rel = chain_ab();
  auto vs = rel.vertex_set();
  EXPECT_THROW(dominates_oracle(Measure::dirac(vs, 0), Measure::zero(vs), rel), Error);
}

TEST(ViaFlow, ChainFeasibleAntichainNot) {
  auto rel = chain_ab();
  auto vs = rel.vertex_set();
  auto v = dominates_via_flow(Measure::dirac(vs, 0), Measure::dirac(vs, 1), share(hasse_digraph(rel)));
  ASSERT_TRUE(v.dominates);
  ASSERT_NE(v.flow(), nullptr);
  EXPECT_EQ(v.flow()->value(0, 1), 1);

  auto anti = share(Digraph(vs, {}));
  auto n = dominates_via_flow(Measure::dirac(vs, 0), Measure::dirac(vs, 1), anti);
  EXPECT_FALSE(n.dominates);
  expect_certificate(n, Measure::dirac(vs, 0), Measure::dirac(vs, 1));
}

TEST(ViaFlow, AgreesWithOracleAndIndependentEnumeration) {
  random::Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    auto rel = random::random_poset(rng, random::uniform_index(rng, 2, 8), 0.35);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto a = dominates_oracle(mu1, mu2, rel);
    auto b = dominates_via_flow(mu1, mu2, share(hasse_digraph(rel)));
    EXPECT_EQ(a.dominates, b.dominates);
    EXPECT_EQ(a.dominates, oracle::dominates(mu1, mu2, rel));
    expect_certificate(a, mu1, mu2);
    expect_certificate(b, mu1, mu2);
  }
}

// mu2(f) - mu1(f) = sum_E Q(x, y)(f(y) - f(x)) for increasing f.
TEST(ViaFlow, IntegrationByParts) {
  random::Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    auto rel = random::random_poset(rng, random::uniform_index(rng, 3, 7), 0.4);
    auto [mu1, mu2] = random::random_dominated_pair(rng, rel);
    auto v = dominates_via_flow(mu1, mu2, share(hasse_digraph(rel)));
    ASSERT_TRUE(v.dominates);
    const Flow& q = *v.flow();
    const std::size_t n = rel.size();
    for (int k = 0; k < 50; ++k) {
      std::vector<Rational> r(n);
      for (auto& x : r) x = random::small_rational(rng, 0, 5, 3);
      std::vector<Rational> f(n);
      for (Vertex x = 0; x < n; ++x) {
        for (Vertex z = 0; z < n; ++z) {
          if (rel.leq(z, x)) f[x] += r[z];
        }
      }
      Rational lhs = 0;
      for (Vertex x = 0; x < n; ++x) lhs += (mu2[x] - mu1[x]) * f[x];
      Rational rhs = 0;
      for (std::size_t id = 0; id < q.digraph().edge_count(); ++id) {
        const auto& e = q.digraph().edge(id);
        rhs += q.value(id) * (f[e.to] - f[e.from]);
      }
      EXPECT_EQ(lhs, rhs);
    }
  }
}

// Verdicts depend only on mu1 - mu2.
TEST(Oracle, InvariantUnderCommonMass) {
  random::Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    auto rel = random::random_poset(rng, random::uniform_index(rng, 2, 6), 0.4);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto m = random::random_measure(rng, rel.vertex_set());
    Rational scale = 1 / (1 + m.total());
    auto s1 = scaled(sum(mu1, m), scale);
    auto s2 = scaled(sum(mu2, m), scale);
    EXPECT_EQ(dominates_oracle(mu1, mu2, rel).dominates, dominates_oracle(s1, s2, rel).dominates);
  }
}

TEST(BuildCoupling, Cases) {
  auto rel = chain_ab();
  auto vs = rel.vertex_set();
  auto hasse = share(hasse_digraph(rel));
  Measure m = w(vs, {Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(build_compatible_coupling(m, m, hasse), Coupling::diagonal(m));
  auto c = build_compatible_coupling(Measure::dirac(vs, 0), Measure::dirac(vs, 1), hasse);
  EXPECT_EQ(c(0, 1), 1);
  try {
    build_compatible_coupling(Measure::dirac(vs, 1), Measure::dirac(vs, 0), hasse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDominated);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{1}));
  }
}

TEST(BuildCoupling, RandomDominatedPairs) {
  random::Rng rng(54);
  for (int t = 0; t < 80; ++t) {
    auto rel = random::random_poset(rng, 7, 0.35);
    auto [mu1, mu2] = random::random_dominated_pair(rng, rel);
    auto c = build_compatible_coupling(mu1, mu2, share(hasse_digraph(rel)));
    EXPECT_TRUE(is_compatible(c, rel));
    auto [a, b] = oracle::marginals(c);
    EXPECT_EQ(a, mu1.weights());
    EXPECT_EQ(b, mu2.weights());
  }
}

TEST(ChainCondition, Cases) {
  auto vs = make_vertex_set({"1", "2"});
  auto yes = chain_condition(Measure::dirac(vs, 0), Measure::dirac(vs, 1), {0, 1});
  ASSERT_TRUE(yes.dominates);
  EXPECT_EQ(yes.flow()->value(0, 1), 1);
  auto no = chain_condition(Measure::dirac(vs, 1), Measure::dirac(vs, 0), {0, 1});
  EXPECT_FALSE(no.dominates);
  EXPECT_EQ(*no.up_set(), (UpSet{1}));
}

TEST(ChainCondition, MatchesOracle) {
  random::Rng rng(55);
  for (int t = 0; t < 100; ++t) {
    auto vs = random::numbered_vertices(8);
    std::vector<Vertex> chain{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(chain.begin(), chain.end(), rng);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = i + 1; j < 8; ++j) pairs.emplace_back(chain[i], chain[j]);
    }
    PartialOrderRelation rel(vs, pairs);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto v = chain_condition(mu1, mu2, chain);
    EXPECT_EQ(v.dominates, oracle::dominates(mu1, mu2, rel));
    expect_certificate(v, mu1, mu2);
  }
}

TEST(TreeCondition, StarRootedBelow) {
  auto g = share(Digraph::from_names({"r", "x", "y"}, {{"r", "x"}, {"r", "y"}}));
  auto vs = g->vertex_set();
  auto t = tree_condition(Measure::dirac(vs, 0), w(vs, {0, Rational(1, 4), Rational(3, 4)}), g);
  ASSERT_TRUE(t.verdict.dominates);
  EXPECT_EQ(t.forced_values.value(0, 1), Rational(1, 4));
  EXPECT_EQ(t.forced_values.value(0, 2), Rational(3, 4));
  auto no = tree_condition(Measure::dirac(vs, 1), Measure::dirac(vs, 0), g);
  EXPECT_FALSE(no.verdict.dominates);
  expect_certificate(no.verdict, Measure::dirac(vs, 1), Measure::dirac(vs, 0));
}

TEST(TreeCondition, NotATree) {
  try {
    tree_condition(Measure::dirac(diamond()->vertex_set(), 0), Measure::dirac(diamond()->vertex_set(), 3), diamond());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotATree);
  }
}

TEST(TreeCondition, MatchesFlowSolverWithSameCertificate) {
  random::Rng rng(56);
  for (int t = 0; t < 100; ++t) {
    auto g = share(random::random_tree_hasse(rng, 8));
    auto rel = PartialOrderRelation::from_digraph(*g);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto tv = tree_condition(mu1, mu2, g);
    auto fv = dominates_via_flow(mu1, mu2, g);
    ASSERT_EQ(tv.verdict.dominates, fv.dominates);
    if (fv.dominates) {
      ASSERT_NE(tv.verdict.flow(), nullptr);
      EXPECT_TRUE(tv.verdict.flow()->same_values(*fv.flow()));
    }
  }
}

TEST(SingleCycle, DiamondCases) {
  auto g = diamond();
  auto vs = g->vertex_set();
  auto yes = single_cycle_condition(Measure::dirac(vs, 0), Measure::dirac(vs, 3), g);
  EXPECT_TRUE(yes.verdict.dominates);
  auto no = single_cycle_condition(Measure::dirac(vs, 3), Measure::dirac(vs, 0), g);
  EXPECT_FALSE(no.verdict.dominates);
  expect_certificate(no.verdict, Measure::dirac(vs, 3), Measure::dirac(vs, 0));
}

TEST(SingleCycle, RejectsNonCycles) {
  auto g = share(Digraph::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  auto vs = g->vertex_set();
  try {
    single_cycle_condition(Measure::dirac(vs, 0), Measure::dirac(vs, 2), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASingleCycle);
  }
}

TEST(SingleCycle, MatchesFlowSolverOnRandomRings) {
  random::Rng rng(57);
  for (int t = 0; t < 100; ++t) {
    auto g = share(random::random_ring_hasse(rng, random::uniform_index(rng, 4, 8)));
    auto rel = PartialOrderRelation::from_digraph(*g);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto sv = single_cycle_condition(mu1, mu2, g);
    EXPECT_EQ(sv.verdict.dominates, dominates_via_flow(mu1, mu2, g).dominates);
    EXPECT_EQ(sv.verdict.dominates, oracle::dominates(mu1, mu2, rel));
    expect_certificate(sv.verdict, mu1, mu2);
  }
}

TEST(ElementaryLattice, Cases) {
  auto vs = diamond()->vertex_set();
  EXPECT_TRUE(elementary_lattice_condition(Measure::dirac(vs, 0), Measure::dirac(vs, 3)));
  EXPECT_FALSE(elementary_lattice_condition(Measure::dirac(vs, 1), Measure::dirac(vs, 2)));
  auto other = make_vertex_set({"A", "B", "C", "E"});
  try {
    elementary_lattice_condition(Measure::dirac(other, 0), Measure::dirac(other, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongShape);
  }
}

TEST(ElementaryLattice, MatchesOracle) {
  random::Rng rng(58);
  auto g = diamond();
  auto rel = PartialOrderRelation::from_digraph(*g);
  for (int t = 0; t < 200; ++t) {
    auto [mu1, mu2] = random_pair(rng, rel);
    EXPECT_EQ(elementary_lattice_condition(mu1, mu2), oracle::dominates(mu1, mu2, rel));
  }
}

TEST(Holley, Cases) {
  auto lat = boolean_lattice(1);
  auto vs = lat.vertex_set();
  Measure u(vs, {Rational(1, 2), Rational(1, 2)});
  EXPECT_TRUE(holley_condition(u, u, lat).holds);
  Measure m1(vs, {Rational(3, 5), Rational(2, 5)});
  Measure m2(vs, {Rational(2, 5), Rational(3, 5)});
  EXPECT_TRUE(holley_condition(m1, m2, lat).holds);
  auto fail = holley_condition(m2, m1, lat);
  EXPECT_FALSE(fail.holds);
  ASSERT_TRUE(fail.witness);
  auto [eta, xi] = *fail.witness;
  EXPECT_LT(m1[lat.join(eta, xi)] * m2[lat.meet(eta, xi)], m1[eta] * m2[xi]);
  try {
    holley_condition(Measure::dirac(vs, 0), u, lat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStrictlyPositive);
  }
}

TEST(Holley, ExhaustiveWitnessScan) {
  random::Rng rng(59);
  auto lat = boolean_lattice(2);
  for (int t = 0; t < 100; ++t) {
    auto m1 = random::random_positive_probability(rng, lat.vertex_set());
    auto m2 = random::random_positive_probability(rng, lat.vertex_set());
    bool holds = true;
    for (Vertex a = 0; a < 4; ++a) {
      for (Vertex b = 0; b < 4; ++b) {
        if (m2[a | b] * m1[a & b] < m2[a] * m1[b]) holds = false;
      }
    }
    auto h = holley_condition(m1, m2, lat);
    EXPECT_EQ(h.holds, holds);
    if (h.holds) EXPECT_TRUE(dominates_oracle(m1, m2, lat.order()).dominates);
  }
}

TEST(Lattice, RejectsNonLattice) {
  auto vs = make_vertex_set({"a", "b"});
  try {
    Lattice(vs, {0, 0, 1, 1}, {0, 0, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotALattice);
  }
}

TEST(HolleySearch, PositiveMinWorks) {
  auto lat = boolean_lattice(1);
  auto vs = lat.vertex_set();
  Measure m1(vs, {Rational(3, 5), Rational(2, 5)});
  Measure m2(vs, {Rational(2, 5), Rational(3, 5)});
  auto s = generalized_holley_search(m1, m2, lat, 100);
  ASSERT_EQ(s.outcome, HolleySearchResult::Outcome::InArrowH);
  EXPECT_EQ(*s.m, pointwise_min(m1, m2));
}

TEST(HolleySearch, EqualMeasuresFound) {
  auto lat = boolean_lattice(2);
  Measure m(lat.vertex_set(), {Rational(1, 2), 0, 0, Rational(1, 2)});
  auto s = generalized_holley_search(m, m, lat, 500);
  ASSERT_EQ(s.outcome, HolleySearchResult::Outcome::InArrowH);
  auto d = difference(m, m);
  auto [plus, minus] = positive_negative_parts(d);
  EXPECT_TRUE(holley_condition(sum(plus, *s.m), sum(minus, *s.m), lat).holds);
}

TEST(HolleySearch, NonDominatedIsUnknown) {
  auto lat = boolean_lattice(2);
  auto vs = lat.vertex_set();
  auto s = generalized_holley_search(Measure::dirac(vs, 3), Measure::dirac(vs, 0), lat, 500);
  EXPECT_EQ(s.outcome, HolleySearchResult::Outcome::Unknown);
  EXPECT_TRUE(s.dominance_prescreen_failed);
}

TEST(HolleySearch, CertificatesImplyDominance) {
  random::Rng rng(60);
  for (std::size_t dim : {2u, 3u}) {
    auto lat = boolean_lattice(dim);
    auto rel = lat.order();
    for (int t = 0; t < 30; ++t) {
      auto [mu1, mu2] = random::random_dominated_pair(rng, rel);
      auto s = generalized_holley_search(mu1, mu2, lat, 300);
      if (s.outcome != HolleySearchResult::Outcome::InArrowH) continue;
      auto [plus, minus] = positive_negative_parts(difference(mu1, mu2));
      EXPECT_TRUE(holley_condition(sum(plus, *s.m), sum(minus, *s.m), lat).holds);
      EXPECT_TRUE(oracle::dominates(mu1, mu2, rel));
    }
  }
}
