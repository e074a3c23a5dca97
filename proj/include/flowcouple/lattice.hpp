#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "flowcouple/flow.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/order.hpp"

namespace flowcouple {

// Finite lattice given by join/meet tables (row-major, n x n). Construction
// checks commutativity, idempotence, associativity and absorption and throws
// Error(NotALattice) with the offending elements.
class Lattice {
 public:
  Lattice(VertexSetPtr vertices, std::vector<Vertex> join, std::vector<Vertex> meet);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t size() const noexcept { return vertices_->size(); }
  [[nodiscard]] Vertex join(Vertex x, Vertex y) const { return join_[x * size() + y]; }
  [[nodiscard]] Vertex meet(Vertex x, Vertex y) const { return meet_[x * size() + y]; }
  [[nodiscard]] const std::vector<Vertex>& join_table() const noexcept { return join_; }
  [[nodiscard]] const std::vector<Vertex>& meet_table() const noexcept { return meet_; }
  // x <= y iff meet(x, y) = x.
  [[nodiscard]] PartialOrderRelation order() const;

 private:
  VertexSetPtr vertices_;
  std::vector<Vertex> join_;
  std::vector<Vertex> meet_;
};

// {0,1}^N; vertex i is named by its N bits, coordinate 0 first ("010").
Lattice boolean_lattice(std::size_t dimension);

struct HolleyResult {
  bool holds = false;
  // First (eta, xi) in index order with m2(eta v xi) m1(eta ^ xi) < m2(eta) m1(xi).
  std::optional<std::pair<Vertex, Vertex>> witness;
};

// NotStrictlyPositive when some mass is zero.
HolleyResult holley_condition(const Measure& m1, const Measure& m2, const Lattice& lattice);

struct HolleySearchResult {
  enum class Outcome { InArrowH, Unknown };
  Outcome outcome = Outcome::Unknown;
  // The certificate m; ([d]_+ + m, [-d]_+ + m) passes holley_condition.
  std::optional<Measure> m;
  std::size_t candidates_tried = 0;
  bool dominance_prescreen_failed = false;
};

// Semi-decision: tries m = min(mu1, mu2), then c * 1 and c * (min(mu1, mu2) + eps)
// over a power-of-two grid, spending at most `budget` Holley checks.
HolleySearchResult generalized_holley_search(const Measure& mu1, const Measure& mu2,
                                             const Lattice& lattice, std::size_t budget);

}  // namespace flowcouple
