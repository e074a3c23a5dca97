#include "flowcouple/order.hpp"

#include "flowcouple/error.hpp"
#include "flowcouple/kernels.hpp"

namespace flowcouple {

PartialOrderRelation::PartialOrderRelation(VertexSetPtr vertices,
                                           const std::vector<std::pair<Vertex, Vertex>>& pairs)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_->size();
  leq_.assign(n * n, 0);
  for (Vertex v = 0; v < n; ++v) leq_[v * n + v] = 1;
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw Error(ErrorKind::InvalidInput, "relation pair out of range");
    leq_[x * n + y] = 1;
  }
  validate();
}

PartialOrderRelation::PartialOrderRelation(VertexSetPtr vertices, std::vector<char> leq)
    : vertices_(std::move(vertices)), leq_(std::move(leq)) {}

PartialOrderRelation PartialOrderRelation::from_digraph(const Digraph& g) {
  if (!is_acyclic(g)) {
    throw Error(ErrorKind::CyclicInput, "order needs an acyclic digraph");
  }
  const std::size_t n = g.vertex_count();
  auto reach = kernels::reachability(g);
  for (Vertex v = 0; v < n; ++v) reach[v * n + v] = 1;
  return PartialOrderRelation(g.vertex_set(), std::move(reach));
}

void PartialOrderRelation::validate() const {
  const std::size_t n = size();
  const auto& vs = *vertices_;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (leq(x, y) && leq(y, x)) {
        throw Error(ErrorKind::NotAPartialOrder,
                    "antisymmetry fails for (" + vs.name(x) + ", " + vs.name(y) + ")", {x, y});
      }
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      for (Vertex z = 0; z < n; ++z) {
        if (z != y && leq(y, z) && !leq(x, z)) {
          throw Error(ErrorKind::NotAPartialOrder,
                      "transitivity fails: (" + vs.name(x) + ", " + vs.name(y) + ") and (" +
                          vs.name(y) + ", " + vs.name(z) + ") but not (" + vs.name(x) + ", " +
                          vs.name(z) + ")",
                      {x, y, z});
        }
      }
    }
  }
}

std::vector<std::pair<Vertex, Vertex>> PartialOrderRelation::pairs() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  const std::size_t n = size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (leq(x, y)) result.emplace_back(x, y);
    }
  }
  return result;
}

Digraph PartialOrderRelation::strict_digraph() const {
  std::vector<Edge> edges;
  const std::size_t n = size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (less(x, y)) edges.push_back({x, y});
    }
  }
  return Digraph(vertices_, std::move(edges));
}

std::uint64_t PartialOrderRelation::up_mask(Vertex x) const {
  if (size() > 64) throw Error(ErrorKind::TooLarge, "up_mask needs at most 64 vertices");
  std::uint64_t mask = 0;
  for (Vertex y = 0; y < size(); ++y) {
    if (leq(x, y)) mask |= std::uint64_t{1} << y;
  }
  return mask;
}

Digraph hasse_digraph(const PartialOrderRelation& rel) {
  const std::size_t n = rel.size();
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex z = 0; z < n; ++z) {
      if (!rel.less(x, z)) continue;
      bool cover = true;
      for (Vertex y = 0; y < n && cover; ++y) {
        if (rel.less(x, y) && rel.less(y, z)) cover = false;
      }
      if (cover) edges.push_back({x, z});
    }
  }
  return Digraph(rel.vertex_set(), std::move(edges));
}

}  // namespace flowcouple
