#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/order.hpp"
#include "flowcouple/transport.hpp"

// Seeded generators for random instances. Every draw goes through Rng so a
// seed pins the whole instance.
namespace flowcouple::random {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive
bool coin(Rng& rng, double p);

// "v0", "v1", ...
VertexSetPtr numbered_vertices(std::size_t n);

// k / denominator with k uniform in [lo, hi].
Rational small_rational(Rng& rng, long lo, long hi, long denominator);

// Weights k/6 with k in [0, 6]; each vertex is zero with probability zero_prob.
Measure random_measure(Rng& rng, const VertexSetPtr& vs, double zero_prob = 0.3);
// random_measure normalised to total 1 (a random Dirac if it came out zero).
Measure random_probability(Rng& rng, const VertexSetPtr& vs, double zero_prob = 0.3);
// Every weight in {1, ..., 6} / 6, normalised.
Measure random_positive_probability(Rng& rng, const VertexSetPtr& vs);

// Edges i -> j (i < j in a random permutation) with probability p.
Digraph random_dag(Rng& rng, const VertexSetPtr& vs, double p);
PartialOrderRelation random_poset(Rng& rng, std::size_t n, double p);

// mu1 a random probability; mu2 obtained by moving each atom's mass in random
// parts to random elements above it, so mu1 is dominated by mu2.
std::pair<Measure, Measure> random_dominated_pair(Rng& rng, const PartialOrderRelation& rel);

// Random values k/4, k in [0, 4], on a random DAG.
Flow random_acyclic_flow(Rng& rng, std::size_t n, double p);
// [div q]_+ plus a random extra measure, so that mu1 - div q >= 0.
Measure random_admissible_source(Rng& rng, const Flow& q);

// Random spanning tree with both orientations and independent weights in
// [1, 5]/2, then extra directed edges with probability p. Strongly connected.
WeightedDigraph random_connected_weighted(Rng& rng, std::size_t n, double p);

// Hasse digraph of a random tree poset (random shape, random orientations).
Digraph random_tree_hasse(Rng& rng, std::size_t n);
// Oriented n-cycle (n >= 4) whose transitive reduction is itself.
Digraph random_ring_hasse(Rng& rng, std::size_t n);
// Cycle c_0 .. c_{n-1}: every edge in both orientations, or in a single common
// direction with probability one_way; weights in [1, 5]/2.
WeightedDigraph random_weighted_ring(Rng& rng, std::size_t n, double one_way = 0.3);
// Path v0 - v1 - ... with both orientations and independent weights in [1, 5]/2;
// forward[i] and backward[i] are the weights of v_i -> v_{i+1} and back.
struct WeightedChain {
  WeightedDigraph graph;
  std::vector<Vertex> chain;
  std::vector<Rational> forward;
  std::vector<Rational> backward;
};
WeightedChain random_weighted_chain(Rng& rng, std::size_t n, bool symmetric);

}  // namespace flowcouple::random
