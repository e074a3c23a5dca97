#pragma once

#include <map>
#include <utility>
#include <vector>

#include "flowcouple/decomposition.hpp"
#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/order.hpp"

namespace flowcouple {

// Nonnegative mass on ordered vertex pairs, stored densely.
class Coupling {
 public:
  explicit Coupling(VertexSetPtr vertices);
  Coupling(VertexSetPtr vertices, std::vector<Rational> dense);
  static Coupling diagonal(const Measure& m);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t size() const noexcept { return vertices_->size(); }
  [[nodiscard]] const Rational& operator()(Vertex x, Vertex y) const { return mass_.at(x * size() + y); }
  void set(Vertex x, Vertex y, Rational value);
  void add(Vertex x, Vertex y, const Rational& value);

  [[nodiscard]] Rational total() const;
  [[nodiscard]] Rational off_diagonal_mass() const;
  // Positive entries in (x, y) index order.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> support() const;
  // sum rho(x, y) c(x, y) over the support; cells must be finite where rho > 0.
  [[nodiscard]] Rational expected_cost(const std::vector<std::optional<Rational>>& cost) const;

  bool operator==(const Coupling& other) const;

 private:
  VertexSetPtr vertices_;
  std::vector<Rational> mass_;
};

std::pair<Measure, Measure> marginals(const Coupling& c);
bool is_compatible(const Coupling& c, const PartialOrderRelation& rel);

// For every off-diagonal pair with positive mass: the paths that carry it and
// their weights, which must add up to rho(x, y).
using PathChoice = std::map<std::pair<Vertex, Vertex>, std::vector<PathEntry>>;

// One path per pair, carrying the whole mass of the pair.
PathChoice single_path_choice(const Coupling& c,
                              const std::map<std::pair<Vertex, Vertex>, DirectedPath>& paths);
// Fewest-edge path for every positive off-diagonal pair (ties by index).
// MissingPath when some pair is not connected in `g`.
PathChoice shortest_path_choice(const Coupling& c, const Digraph& g);

Flow flow_from_coupling(const Coupling& c, const DigraphPtr& graph, const PathChoice& choice);

// The one-step flow sum rho(x, y) Q_(x,y) has acyclic support.
bool is_economic(const Coupling& c);

// mu2 = mu1 - div q. NegativeTarget if some entry is negative.
Measure target_measure(const Flow& q, const Measure& mu1);

struct LedgerResult {
  Coupling coupling;
  // Traversed path of every transferred parcel, merged per (source, target).
  PathChoice paths;
};

LedgerResult coupling_from_flow_ledger_traced(const Flow& q, const Measure& mu1);
Coupling coupling_from_flow_ledger(const Flow& q, const Measure& mu1);
Coupling coupling_from_flow_decomposition(const Flow& q, const Measure& mu1);
// Same construction from an explicit decomposition of q.
Coupling coupling_from_decomposition(const PathMeasure& pm, const Measure& mu1, const Measure& mu2);

}  // namespace flowcouple
