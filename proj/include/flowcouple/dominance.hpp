#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "flowcouple/coupling.hpp"
#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/order.hpp"

namespace flowcouple {

using UpSet = std::vector<Vertex>;

// Exhaustive enumeration proves "yes" by itself; such verdicts carry
// std::monostate. All other yes-verdicts carry a Flow with div = mu1 - mu2;
// every no-verdict carries an up-set U with mu1(U) > mu2(U).
struct DominanceVerdict {
  bool dominates = false;
  std::variant<std::monostate, Flow, UpSet> certificate;

  [[nodiscard]] const Flow* flow() const { return std::get_if<Flow>(&certificate); }
  [[nodiscard]] const UpSet* up_set() const { return std::get_if<UpSet>(&certificate); }
};

inline constexpr std::size_t kOracleVertexLimit = 24;

DominanceVerdict dominates_oracle(const Measure& mu1, const Measure& mu2,
                                  const PartialOrderRelation& rel);
DominanceVerdict dominates_via_flow(const Measure& mu1, const Measure& mu2, const DigraphPtr& hasse);
// NotDominated (witness = violating up-set) unless mu1 is dominated by mu2.
Coupling build_compatible_coupling(const Measure& mu1, const Measure& mu2, const DigraphPtr& hasse);

DominanceVerdict chain_condition(const Measure& mu1, const Measure& mu2,
                                 const std::vector<Vertex>& chain_order);

// Forced edge values Q(e) = sum over the tail side of e of (mu1 - mu2).
struct TreeVerdict {
  DominanceVerdict verdict;
  Flow forced_values;  // the forced values clipped at 0 where negative
  std::vector<Rational> signed_values;
};
TreeVerdict tree_condition(const Measure& mu1, const Measure& mu2, const DigraphPtr& tree_hasse);

struct RingOrientation {
  // Closed vertex sequence c_0, ..., c_{n-1}, c_0.
  std::vector<Vertex> cycle;
  // Edge ids of c_i -> c_{i+1} and c_{i+1} -> c_i where present.
  std::vector<std::optional<std::size_t>> forward;
  std::vector<std::optional<std::size_t>> backward;
  // phi_star[i] = sum_{k <= i} (mu1 - mu2)(c_k): the circulation-free field
  // (last entry 0) with divergence mu1 - mu2 along the cycle.
  std::vector<Rational> phi_star;
};

// NotASingleCycle unless the undirected shadow is one cycle on >= 3 vertices
// and `orientation` (if given) traverses it.
RingOrientation ring_orientation(const Digraph& g, const SignedMeasure& delta,
                                 const std::vector<Vertex>& orientation = {});

struct SingleCycleVerdict {
  DominanceVerdict verdict;
  RingOrientation ring;
  // Smallest admissible alpha when dominance holds.
  std::optional<Rational> alpha;
};
// `orientation` empty selects the fundamental cycle of the digraph.
SingleCycleVerdict single_cycle_condition(const Measure& mu1, const Measure& mu2,
                                          const DigraphPtr& ring_hasse,
                                          const std::vector<Vertex>& orientation = {});

// Vertices must be named exactly A, B, C, D (any order); diamond A<B<D, A<C<D.
bool elementary_lattice_condition(const Measure& mu1, const Measure& mu2);

}  // namespace flowcouple
