#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "flowcouple/digraph.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/rational.hpp"

namespace flowcouple {

using DigraphPtr = std::shared_ptr<const Digraph>;

inline DigraphPtr share(Digraph g) { return std::make_shared<const Digraph>(std::move(g)); }

// Nonnegative value per edge, aligned with the digraph's edge ids.
class Flow {
 public:
  Flow(DigraphPtr graph, std::vector<Rational> values);
  static Flow zero(DigraphPtr graph);

  [[nodiscard]] const Digraph& digraph() const noexcept { return *graph_; }
  [[nodiscard]] const DigraphPtr& digraph_ptr() const noexcept { return graph_; }
  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return graph_->vertex_set(); }
  [[nodiscard]] const std::vector<Rational>& values() const noexcept { return values_; }
  [[nodiscard]] const Rational& value(std::size_t edge_id) const { return values_.at(edge_id); }
  // Zero when (from, to) is not an edge.
  [[nodiscard]] Rational value(Vertex from, Vertex to) const;
  [[nodiscard]] Rational total() const;
  [[nodiscard]] bool is_zero() const;

  // E(Q): the edges carrying positive value, same vertex set.
  [[nodiscard]] Digraph support_digraph() const;
  [[nodiscard]] bool has_acyclic_support() const { return is_acyclic(support_digraph()); }

  // Adds `delta` on an edge; the result must stay nonnegative.
  void add(std::size_t edge_id, const Rational& delta);

  // Edgewise equality over the union of both edge sets (missing edge = 0).
  [[nodiscard]] bool same_values(const Flow& other) const;
  // Q <= other on every edge of Q.
  [[nodiscard]] bool dominated_by(const Flow& other) const;

 private:
  DigraphPtr graph_;
  std::vector<Rational> values_;
};

SignedMeasure divergence(const Flow& q);
Flow flow_from_path(const DigraphPtr& graph, const DirectedPath& path);
// The pairing <Q, w> over edge ids.
Rational pairing(const Flow& q, const std::vector<Rational>& weights);

// Antisymmetric function on the oriented edges of an undirected edge set. Each
// undirected edge stores one value in its (a, b) orientation.
class DiscreteVectorField {
 public:
  DiscreteVectorField(VertexSetPtr vertices, std::vector<UndirectedEdge> edges,
                      std::vector<Rational> values);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<UndirectedEdge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<Rational>& values() const noexcept { return values_; }
  [[nodiscard]] bool contains(Vertex x, Vertex y) const;
  // phi(x, y); zero when {x, y} is not in the edge set.
  [[nodiscard]] Rational value(Vertex x, Vertex y) const;
  [[nodiscard]] SignedMeasure divergence() const;

  bool operator==(const DiscreteVectorField& other) const;

 private:
  VertexSetPtr vertices_;
  std::vector<UndirectedEdge> edges_;
  std::vector<Rational> values_;
  std::unordered_map<std::size_t, std::size_t> lookup_;
};

// phi(x, y) = f(y) - f(x) on the given edges.
DiscreteVectorField gradient_field(VertexSetPtr vertices, std::vector<UndirectedEdge> edges,
                                   const std::vector<Rational>& f);
// Unit circulation along a closed vertex sequence.
DiscreteVectorField cycle_field(VertexSetPtr vertices, const std::vector<Vertex>& closed_cycle);

DiscreteVectorField project_to_field(const Flow& q);
// Q(x, y) = [phi(x, y)]_+ on the edges of `graph`. UnrepresentableField when
// phi(x, y) > 0 for an oriented pair (x, y) missing from the digraph.
Flow minimal_flow_from_field(const DiscreteVectorField& phi, const DigraphPtr& graph);

// Repeatedly subtracts m * Q_C along the first cycle found by DFS (roots and
// out-edges in index order), m the minimum value on C.
Flow remove_cycles(const Flow& q);

}  // namespace flowcouple
