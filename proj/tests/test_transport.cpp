#include <gtest/gtest.h>

#include "flowcouple/error.hpp"
#include "flowcouple/kernels.hpp"
#include "flowcouple/lattice.hpp"
#include "flowcouple/random_instances.hpp"
#include "flowcouple/transport.hpp"
#include "support/oracles.hpp"

using namespace flowcouple;

namespace {

WeightedDigraph weighted(std::vector<std::string> vs,
                         std::vector<std::tuple<std::string, std::string, Rational>> es) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<Rational> w;
  for (auto& [a, b, x] : es) {
    pairs.emplace_back(a, b);
    w.push_back(x);
  }
  return WeightedDigraph(share(Digraph::from_names(std::move(vs), pairs)), std::move(w));
}

// Ring data in the orientation chosen by ring_orientation.
struct RingData {
  std::vector<std::optional<Rational>> forward;
  std::vector<std::optional<Rational>> backward;
};

RingData ring_data(const WeightedDigraph& wg, const RingOrientation& ring) {
  RingData d;
  for (std::size_t i = 0; i < ring.forward.size(); ++i) {
    auto get = [&](const std::optional<std::size_t>& id) -> std::optional<Rational> {
      if (!id) return std::nullopt;
      return wg.weights[*id];
    };
    d.forward.push_back(get(ring.forward[i]));
    d.backward.push_back(get(ring.backward[i]));
  }
  return d;
}

}  // namespace

TEST(Geodesic, Basics) {
  auto wg = weighted({"a", "b"}, {{"a", "b", Rational(7, 2)}});
  EXPECT_EQ(geodesic_cost(wg, 0, 0), 0);
  EXPECT_EQ(geodesic_cost(wg, 0, 1), Rational(7, 2));
  try {
    geodesic_cost(wg, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unreachable);
  }
}

TEST(Geodesic, MatchesBellmanFordAndTriangle) {
  random::Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    auto wg = random::random_connected_weighted(rng, 8, 0.15);
    auto costs = geodesic_cost_matrix(wg);
    for (Vertex x = 0; x < 8; ++x) {
      auto bf = oracle::bellman_ford(wg, x);
      for (Vertex y = 0; y < 8; ++y) {
        ASSERT_TRUE(costs(x, y));
        EXPECT_EQ(*costs(x, y), *bf[y]);
      }
    }
    for (Vertex x = 0; x < 8; ++x) {
      for (Vertex y = 0; y < 8; ++y) {
        for (Vertex z = 0; z < 8; ++z) EXPECT_LE(*costs(x, z), *costs(x, y) + *costs(y, z));
      }
    }
    auto path = geodesic_path(wg, 0, 7);
    Rational along = 0;
    for (std::size_t id : path_edges(wg.digraph(), path)) along += wg.weights[id];
    EXPECT_EQ(along, *costs(0, 7));
  }
}

TEST(Geodesic, SymmetricWeightsSymmetricCost) {
  random::Rng rng(62);
  for (int t = 0; t < 20; ++t) {
    auto chain = random::random_weighted_chain(rng, 6, true);
    auto costs = geodesic_cost_matrix(chain.graph);
    for (Vertex x = 0; x < 6; ++x) {
      for (Vertex y = 0; y < 6; ++y) EXPECT_EQ(*costs(x, y), *costs(y, x));
    }
  }
}

TEST(Beckmann, Basics) {
  auto wg = weighted({"0", "1"}, {{"0", "1", Rational(3)}});
  auto vs = wg.vertex_set();
  auto r = beckmann_min(wg, Measure::dirac(vs, 0), Measure::dirac(vs, 1));
  EXPECT_EQ(r.optimal_value, 3);
  EXPECT_EQ(r.optimal_flow.value(0, 1), 1);
  EXPECT_EQ(r.optimal_coupling(0, 1), 1);
  Measure m(vs, {Rational(1, 2), Rational(1, 2)});
  auto z = beckmann_min(wg, m, m);
  EXPECT_EQ(z.optimal_value, 0);
  EXPECT_TRUE(z.optimal_flow.is_zero());
  EXPECT_EQ(z.optimal_coupling, Coupling::diagonal(m));
  try {
    beckmann_min(wg, Measure::dirac(vs, 1), Measure::dirac(vs, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
}

TEST(Transport, BeckmannEqualsKantorovich) {
  random::Rng rng(63);
  for (int t = 0; t < 100; ++t) {
    auto wg = random::random_connected_weighted(rng, random::uniform_index(rng, 2, 8), 0.2);
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto b = beckmann_min(wg, mu1, mu2);
    auto costs = geodesic_cost_matrix(wg);
    auto k = kantorovich_min(costs, mu1, mu2);
    EXPECT_EQ(b.optimal_value, k.optimal_value);
    EXPECT_EQ(b.optimal_coupling.expected_cost(costs.cells), b.optimal_value);
    EXPECT_EQ(k.optimal_coupling.expected_cost(costs.cells), k.optimal_value);
    auto [a1, a2] = oracle::marginals(b.optimal_coupling);
    EXPECT_EQ(a1, mu1.weights());
    EXPECT_EQ(a2, mu2.weights());
    EXPECT_EQ(oracle::divergence(b.optimal_flow), difference(mu1, mu2).weights());
    EXPECT_TRUE(b.optimal_flow.has_acyclic_support());
  }
}

// <flow_from_coupling(rho), w> >= E_rho(c) for any coupling and geodesic paths.
TEST(Transport, FlowCostDominatesCouplingCost) {
  random::Rng rng(64);
  for (int t = 0; t < 40; ++t) {
    auto wg = random::random_connected_weighted(rng, 6, 0.2);
    auto costs = geodesic_cost_matrix(wg);
    Coupling c(wg.vertex_set());
    std::map<std::pair<Vertex, Vertex>, DirectedPath> paths;
    for (Vertex x = 0; x < 6; ++x) {
      for (Vertex y = 0; y < 6; ++y) {
        if (x != y && random::coin(rng, 0.3)) {
          c.set(x, y, random::small_rational(rng, 1, 3, 3));
          paths[{x, y}] = geodesic_path(wg, x, y);
        }
      }
    }
    auto q = flow_from_coupling(c, wg.graph, single_path_choice(c, paths));
    EXPECT_GE(pairing(q, wg.weights), c.expected_cost(costs.cells));
    EXPECT_LE(pairing(minimal_flow_from_field(project_to_field(q), wg.graph), wg.weights), pairing(q, wg.weights));
  }
}

TEST(Kantorovich, Basics) {
  auto vs = make_vertex_set({"a", "b", "c"});
  CostMatrix zero{vs, std::vector<std::optional<Rational>>(9, Rational(0))};
  Measure mu1(vs, {Rational(1, 2), Rational(1, 2), 0});
  Measure mu2(vs, {0, Rational(1, 4), Rational(3, 4)});
  auto r = kantorovich_min(zero, mu1, mu2);
  EXPECT_EQ(r.optimal_value, 0);
  // Northwest corner fill.
  EXPECT_EQ(r.optimal_coupling(0, 1), Rational(1, 4));
  EXPECT_EQ(r.optimal_coupling(0, 2), Rational(1, 4));
  EXPECT_EQ(r.optimal_coupling(1, 2), Rational(1, 2));

  std::vector<std::optional<Rational>> cells(9, Rational(1));
  cells[0 * 3 + 1] = Rational(5, 2);
  auto d = kantorovich_min(CostMatrix{vs, cells}, Measure::dirac(vs, 0), Measure::dirac(vs, 1));
  EXPECT_EQ(d.optimal_value, Rational(5, 2));
  EXPECT_EQ(d.optimal_coupling(0, 1), 1);
}

TEST(ChainWasserstein, Basics) {
  auto chain = random::WeightedChain{
      weighted({"0", "1", "2", "3"}, {{"0", "1", 1}, {"1", "0", 1}, {"1", "2", 1}, {"2", "1", 1}, {"2", "3", 1}, {"3", "2", 1}}),
      {0, 1, 2, 3},
      {1, 1, 1},
      {1, 1, 1}};
  auto vs = chain.graph.vertex_set();
  EXPECT_EQ(chain_wasserstein(chain.chain, chain.forward, Measure::dirac(vs, 0), Measure::dirac(vs, 3)), 3);
  EXPECT_EQ(chain_wasserstein(chain.chain, chain.forward, Measure::dirac(vs, 2), Measure::dirac(vs, 2)), 0);
}

TEST(ChainWasserstein, EqualsBeckmannAndCdfOracle) {
  random::Rng rng(65);
  for (int t = 0; t < 100; ++t) {
    bool symmetric = t % 2 == 0;
    auto chain = random::random_weighted_chain(rng, 10, symmetric);
    auto mu1 = random::random_probability(rng, chain.graph.vertex_set());
    auto mu2 = random::random_probability(rng, chain.graph.vertex_set());
    Rational closed = symmetric ? chain_wasserstein(chain.chain, chain.forward, mu1, mu2)
                                : chain_wasserstein(chain.chain, chain.forward, chain.backward, mu1, mu2);
    EXPECT_EQ(closed, beckmann_min(chain.graph, mu1, mu2).optimal_value);
    EXPECT_EQ(closed, oracle::chain_w1(chain.chain, chain.forward, chain.backward, mu1, mu2));
  }
}

TEST(Ring, SymmetricFourCycle) {
  auto wg = weighted({"0", "1", "2", "3"}, {{"0", "1", 1}, {"1", "0", 1}, {"1", "2", 1}, {"2", "1", 1},
                                            {"2", "3", 1}, {"3", "2", 1}, {"3", "0", 1}, {"0", "3", 1}});
  auto vs = wg.vertex_set();
  auto sol = ring_optimal(wg, Measure::dirac(vs, 1), Measure::dirac(vs, 3));
  EXPECT_EQ(sol.result.optimal_value, 2);
  Measure m(vs, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  auto flat = ring_optimal(wg, m, m);
  EXPECT_EQ(flat.result.optimal_value, 0);
  EXPECT_TRUE(!flat.alpha_low || *flat.alpha_low <= 0);
  EXPECT_TRUE(!flat.alpha_high || *flat.alpha_high >= 0);
}

TEST(Ring, IntervalOptimalAndSharp) {
  random::Rng rng(66);
  for (int t = 0; t < 60; ++t) {
    auto wg = random::random_weighted_ring(rng, random::uniform_index(rng, 3, 10));
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto sol = ring_optimal(wg, mu1, mu2);
    auto best = beckmann_min(wg, mu1, mu2).optimal_value;
    auto data = ring_data(wg, sol.ring);
    EXPECT_EQ(sol.result.optimal_value, best);
    EXPECT_EQ(oracle::ring_minimum(sol.ring.phi_star, data.forward, data.backward), best);
    std::vector<Rational> probes{sol.alpha};
    if (sol.alpha_low) probes.push_back(*sol.alpha_low);
    if (sol.alpha_high) probes.push_back(*sol.alpha_high);
    for (const auto& a : probes) {
      EXPECT_EQ(oracle::ring_cost(sol.ring.phi_star, a, data.forward, data.backward), best);
      EXPECT_EQ(ring_cost_at(wg, sol.ring, a), best);
    }
    Rational eps(1, 64);
    if (sol.alpha_low) {
      auto c = oracle::ring_cost(sol.ring.phi_star, *sol.alpha_low - eps, data.forward, data.backward);
      EXPECT_TRUE(!c || *c > best);
    }
    if (sol.alpha_high) {
      auto c = oracle::ring_cost(sol.ring.phi_star, *sol.alpha_high + eps, data.forward, data.backward);
      EXPECT_TRUE(!c || *c > best);
    }
  }
}

TEST(Subdifferential, BeckmannFlowsPass) {
  random::Rng rng(67);
  for (int t = 0; t < 60; ++t) {
    auto wg = random::random_connected_weighted(rng, random::uniform_index(rng, 2, 7), 0.2);
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto r = beckmann_min(wg, mu1, mu2);
    EXPECT_TRUE(subdifferential_optimality_check(wg, r.optimal_flow, fundamental_cycle_basis(wg.digraph())));
  }
}

TEST(Subdifferential, PerturbedFlowFails) {
  // Cheap direct edge a -> c, costly detour a -> b -> c.
  auto wg = weighted({"a", "b", "c"}, {{"a", "b", 5}, {"b", "c", 5}, {"a", "c", 1}, {"c", "a", 1}, {"b", "a", 5}, {"c", "b", 5}});
  auto vs = wg.vertex_set();
  auto r = beckmann_min(wg, Measure::dirac(vs, 0), Measure::dirac(vs, 2));
  auto basis = fundamental_cycle_basis(wg.digraph());
  EXPECT_TRUE(subdifferential_optimality_check(wg, r.optimal_flow, basis));
  // Push 1/10 around a -> b -> c -> a.
  Flow perturbed = r.optimal_flow;
  auto add = [&](Vertex x, Vertex y, const Rational& v) { perturbed.add(*wg.digraph().find_edge(x, y), v); };
  add(0, 1, Rational(1, 10));
  add(1, 2, Rational(1, 10));
  add(0, 2, Rational(-1, 10));
  EXPECT_FALSE(subdifferential_optimality_check(wg, perturbed, basis));
}

TEST(Subdifferential, TreeIsVacuous) {
  auto wg = weighted({"a", "b"}, {{"a", "b", 1}});
  Flow q(wg.graph, {Rational(1)});
  EXPECT_TRUE(subdifferential_optimality_check(wg, q, fundamental_cycle_basis(wg.digraph())));
}

TEST(Subdifferential, RingAcceptsExactlyTheInterval) {
  random::Rng rng(68);
  for (int t = 0; t < 40; ++t) {
    auto wg = random::random_weighted_ring(rng, random::uniform_index(rng, 3, 8), 0.0);
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto sol = ring_optimal(wg, mu1, mu2);
    auto basis = fundamental_cycle_basis(wg.digraph());
    EXPECT_TRUE(subdifferential_optimality_check(wg, ring_flow_at(wg, sol.ring, sol.alpha), basis));
    Rational eps(1, 64);
    if (sol.alpha_low) {
      EXPECT_FALSE(subdifferential_optimality_check(wg, ring_flow_at(wg, sol.ring, *sol.alpha_low - eps), basis));
    }
    if (sol.alpha_high) {
      EXPECT_FALSE(subdifferential_optimality_check(wg, ring_flow_at(wg, sol.ring, *sol.alpha_high + eps), basis));
    }
  }
}

TEST(LatticeFlows, CornerToCorner) {
  auto lat = boolean_lattice(2);
  auto vs = lat.vertex_set();
  auto r = lattice_all_flows_optimal(2, Measure::dirac(vs, 0), Measure::dirac(vs, 3), 30, 7);
  EXPECT_TRUE(r.all_optimal);
  EXPECT_EQ(r.optimal_value, 2);
  Measure u(vs, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  auto z = lattice_all_flows_optimal(2, u, u, 10, 7);
  EXPECT_TRUE(z.all_optimal);
  EXPECT_EQ(z.optimal_value, 0);
}

TEST(LatticeFlows, RandomDominatedPairsMatchHammingGap) {
  random::Rng rng(69);
  auto lat = boolean_lattice(3);
  for (int t = 0; t < 10; ++t) {
    auto [mu1, mu2] = random::random_dominated_pair(rng, lat.order());
    auto r = lattice_all_flows_optimal(3, mu1, mu2, 30, 100 + t);
    EXPECT_TRUE(r.all_optimal);
    EXPECT_EQ(r.optimal_value, oracle::hamming_gap(mu1, mu2));
    EXPECT_EQ(r.probe_costs.size(), 30u);
  }
}

TEST(LatticeFlows, RejectsNonDominated) {
  auto lat = boolean_lattice(2);
  auto vs = lat.vertex_set();
  try {
    lattice_all_flows_optimal(2, Measure::dirac(vs, 3), Measure::dirac(vs, 0), 5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDominated);
  }
}
