#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowcouple/coupling.hpp"
#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"

namespace flowcouple {

// Edge of a countable instance between generator indices, with its flow value.
struct LazyEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational flow;
};

// A countable digraph with a flow and two measures, described by pure
// generators over vertex indices 0, 1, 2, ... The invading sequence is
// V_n = {0, ..., prefix_size(n) - 1}.
struct LazyInstance {
  std::string name;
  std::function<std::string(std::size_t)> vertex_name;
  // Every edge leaving / entering a vertex; nullopt when that list is not
  // finite (the boundary flux cannot be summed).
  std::function<std::optional<std::vector<LazyEdge>>(std::size_t)> out_edges;
  std::function<std::optional<std::vector<LazyEdge>>(std::size_t)> in_edges;
  std::function<Rational(std::size_t)> mu1;
  std::function<Rational(std::size_t)> mu2;
  std::function<std::size_t(std::size_t)> prefix_size;
  // Upper bound for sum_{x not in V_n} (mu1 + mu2)(x), when known.
  std::function<std::optional<Rational>(std::size_t)> tail_mass;
  bool tree_shadow = false;
};

struct ZChainParams {
  enum class Kind { FinitelySupported, Geometric, Drift };
  Kind kind = Kind::FinitelySupported;
  std::map<long, Rational> mu1;
  std::map<long, Rational> mu2;
  // Two-sided geometric laws mu(z) = (1 - r)/(1 + r) r^|z|.
  Rational r1;
  Rational r2;
  // Constant flow on every edge z -> z + 1 with mu1 = mu2 = 0.
  Rational drift;
};

// Vertex indices enumerate 0, -1, 1, -2, 2, ...; V_n = {-n, ..., n}. Both
// orientations of every edge exist; the flow Q(z, z + 1) = F1(z) - F2(z) sits on
// whichever orientation makes it nonnegative.
LazyInstance z_chain_instance(const ZChainParams& params);
long z_chain_value(std::size_t index);
std::size_t z_chain_index(long z);

struct BinaryTreeParams {
  enum class Kind { FinitelySupported, Geometric };
  Kind kind = Kind::FinitelySupported;
  // Keyed by heap index (root 0, children 2i + 1 and 2i + 2).
  std::map<std::size_t, Rational> mu1;
  std::map<std::size_t, Rational> mu2;
  // mu1 = delta_root, mu2(v) = (1 - r) r^d / 2^d at depth d.
  Rational r;
};

// Heap-indexed binary tree named "r", "r0", "r1", "r00", ...; V_n = depth <= n.
// Q on the edge into v is mu2(subtree v) - mu1(subtree v), oriented by sign.
LazyInstance binary_tree_instance(const BinaryTreeParams& params);
std::size_t binary_tree_index(const std::string& name);

enum class GhostMode { Single, Split };

struct DecompositionPrefix {
  // Paths over generator indices, all inside V_n, with their weights.
  std::vector<std::pair<std::vector<std::size_t>, Rational>> paths;
  // Total weight of the remaining paths of the decomposition.
  Rational tail_weight;
};

struct TruncatedInstance {
  std::size_t level = 0;
  std::size_t inner_count = 0;  // vertices 0 .. inner_count - 1 are V_n
  GhostMode mode = GhostMode::Single;
  Flow truncated_flow;  // on V_n plus "g" or "g-", "g+"
  // Truncated measures: the inner masses plus the ghost exchange, so that
  // div truncated_flow = mu1 - mu2 everywhere.
  Measure mu1;
  Measure mu2;
  // Ghost exchange seen from V_n: Q(g, x) - Q(x, g); zero on ghosts.
  SignedMeasure boundary_defect;
  Rational ghost_out;  // total flow leaving the ghost(s)
  Rational ghost_in;   // total flow entering the ghost(s)
  std::optional<Rational> tail_bound;
  bool flux_bounds_checked = false;
  bool flux_bounds_hold = false;
};

TruncatedInstance ghost_truncate(const LazyInstance& li, std::size_t n, GhostMode mode,
                                 const std::optional<DecompositionPrefix>& prefix = std::nullopt);

// Coupling from the decomposition builder on a split-mode truncation.
Coupling truncated_coupling(const LazyInstance& li, std::size_t n);

struct FluxLevel {
  std::size_t level;
  Rational outgoing;
  Rational incoming;
};

// Asserts out - in = mu1(V_n) - mu2(V_n) at every level (InconsistentInstance).
std::vector<FluxLevel> zero_flux_estimate(const LazyInstance& li, std::size_t n_max);

struct SupTailReport {
  // One entry per level 1..n_max: an edge touching V \ V_n with Q >= epsilon,
  // searched among the edges of V_{n_max + 1}.
  std::vector<std::optional<LazyEdge>> witnesses;
  bool witness_at_every_level = false;
  std::string summary;
};

SupTailReport sup_tail_witness(const LazyInstance& li, std::size_t n_max, const Rational& epsilon);

struct ZChainFlow {
  long low = 0;
  long high = 0;
  // Q(z, z + 1) for z = low .. high - 1.
  std::vector<Rational> signed_values;
  bool dominates = false;
  // On the window {low..high} with both orientations of each edge.
  [[nodiscard]] Flow flow() const;
};

ZChainFlow z_chain_flow(const std::map<long, Rational>& mu1, const std::map<long, Rational>& mu2);

struct TreeFlowEstimate {
  Rational partial_sum;
  std::optional<Rational> tail_bound;
};

// sum_{z in T_-^e, z in V_depth} (mu1 - mu2)(z) for the edge e = (from, to).
TreeFlowEstimate infinite_tree_flow(const LazyInstance& li, const LazyEdge& e, std::size_t depth);

}  // namespace flowcouple
