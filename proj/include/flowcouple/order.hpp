#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "flowcouple/digraph.hpp"

namespace flowcouple {

// x <= y relation on a finite vertex set. Reflexive pairs are implied on input.
// Construction validates antisymmetry and transitivity and throws
// Error(NotAPartialOrder) with the offending pair (or triple) as witness.
class PartialOrderRelation {
 public:
  PartialOrderRelation(VertexSetPtr vertices, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  // Order induced by reachability in an acyclic digraph. CyclicInput otherwise.
  static PartialOrderRelation from_digraph(const Digraph& g);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t size() const noexcept { return vertices_->size(); }
  [[nodiscard]] bool leq(Vertex x, Vertex y) const { return leq_[x * size() + y] != 0; }
  [[nodiscard]] bool less(Vertex x, Vertex y) const { return x != y && leq(x, y); }

  // Every x <= y including reflexive pairs, in (x, y) index order.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> pairs() const;
  // Digraph of all strict pairs x < y.
  [[nodiscard]] Digraph strict_digraph() const;
  // Bit y of up_mask(x) is set iff x <= y. Requires size() <= 64.
  [[nodiscard]] std::uint64_t up_mask(Vertex x) const;

 private:
  PartialOrderRelation(VertexSetPtr vertices, std::vector<char> leq);
  void validate() const;

  VertexSetPtr vertices_;
  std::vector<char> leq_;
};

// Covering pairs of the order; equals transitive_reduction(strict_digraph()).
Digraph hasse_digraph(const PartialOrderRelation& rel);

}  // namespace flowcouple
