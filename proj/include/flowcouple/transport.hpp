#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flowcouple/coupling.hpp"
#include "flowcouple/dominance.hpp"
#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"

namespace flowcouple {

struct WeightedDigraph {
  DigraphPtr graph;
  std::vector<Rational> weights;  // per edge id, nonnegative

  WeightedDigraph(DigraphPtr g, std::vector<Rational> w);
  [[nodiscard]] const Digraph& digraph() const { return *graph; }
  [[nodiscard]] const VertexSetPtr& vertex_set() const { return graph->vertex_set(); }
};

// Row-major n x n costs; nullopt is +infinity.
struct CostMatrix {
  VertexSetPtr vertices;
  std::vector<std::optional<Rational>> cells;

  [[nodiscard]] std::size_t size() const { return vertices->size(); }
  [[nodiscard]] const std::optional<Rational>& operator()(Vertex x, Vertex y) const {
    return cells.at(x * size() + y);
  }
};

struct TransportResult {
  Rational optimal_value;
  Flow optimal_flow;
  Coupling optimal_coupling;
};

Rational geodesic_cost(const WeightedDigraph& wg, Vertex x, Vertex y);
DirectedPath geodesic_path(const WeightedDigraph& wg, Vertex x, Vertex y);
CostMatrix geodesic_cost_matrix(const WeightedDigraph& wg);

// Min-cost flow with divergence mu1 - mu2, cycles removed, coupling extracted
// from the path decomposition. Infeasible when some demand cannot be served.
TransportResult beckmann_min(const WeightedDigraph& wg, const Measure& mu1, const Measure& mu2);

// Transportation problem solved from the northwest-corner coupling by
// negative-cycle canceling. The flow lives on the digraph of finite-cost
// off-diagonal pairs, weighted by the costs.
TransportResult kantorovich_min(const CostMatrix& costs, const Measure& mu1, const Measure& mu2);

// Closed form on a chain c_0 < ... < c_{k}: forward[i] weights c_i -> c_{i+1},
// backward[i] weights c_{i+1} -> c_i.
Rational chain_wasserstein(const std::vector<Vertex>& chain, const std::vector<Rational>& forward,
                           const std::vector<Rational>& backward, const Measure& mu1,
                           const Measure& mu2);
Rational chain_wasserstein(const std::vector<Vertex>& chain, const std::vector<Rational>& symmetric,
                           const Measure& mu1, const Measure& mu2);

struct RingSolution {
  RingOrientation ring;
  // Optimal alpha interval; nullopt marks an unbounded side.
  std::optional<Rational> alpha_low;
  std::optional<Rational> alpha_high;
  Rational alpha;  // midpoint, or the finite endpoint, or 0
  TransportResult result;
};

// Cost of Q^{phi_star + alpha phi^C}; nullopt when that flow needs a missing edge.
std::optional<Rational> ring_cost_at(const WeightedDigraph& wg, const RingOrientation& ring,
                                     const Rational& alpha);
Flow ring_flow_at(const WeightedDigraph& wg, const RingOrientation& ring, const Rational& alpha);
RingSolution ring_optimal(const WeightedDigraph& wg, const Measure& mu1, const Measure& mu2);

// For every basis cycle, the one-sided derivatives of alpha -> <Q^{phi + alpha phi^C}, w>
// at 0 must straddle 0. NotMinimalForm when both (x, y) and (y, x) carry flow.
bool subdifferential_optimality_check(const WeightedDigraph& wg, const Flow& flow,
                                      const CycleBasis& basis);

struct LatticeProbeReport {
  bool all_optimal = false;
  Rational optimal_value;
  std::vector<Rational> probe_costs;
};

// Boolean lattice {0,1}^N with unit Hasse weights: random feasible flows all
// cost the same. NotDominated unless mu1 is dominated by mu2.
LatticeProbeReport lattice_all_flows_optimal(std::size_t dimension, const Measure& mu1,
                                             const Measure& mu2, std::size_t probe_count,
                                             std::uint64_t seed);

}  // namespace flowcouple
