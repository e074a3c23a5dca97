#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace flowcouple {

// Vertices are positions in a VertexSet; input order is the tie-break order
// everywhere in the library.
using Vertex = std::size_t;

class VertexSet {
 public:
  explicit VertexSet(std::vector<std::string> names);

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] const std::string& name(Vertex v) const { return names_.at(v); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] std::optional<Vertex> find(const std::string& name) const;
  // Throws Error(VertexMismatch) for unknown names.
  [[nodiscard]] Vertex index(const std::string& name) const;

  bool operator==(const VertexSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
};

using VertexSetPtr = std::shared_ptr<const VertexSet>;

VertexSetPtr make_vertex_set(std::vector<std::string> names);
bool same_vertices(const VertexSetPtr& a, const VertexSetPtr& b);
// Throws Error(VertexMismatch) unless same_vertices(a, b).
void require_same_vertices(const VertexSetPtr& a, const VertexSetPtr& b,
                           const char* what);

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Finite digraph without self-loops or duplicate edges. Edge ids follow input
// order; adjacency lists are kept in edge-id order.
class Digraph {
 public:
  Digraph(VertexSetPtr vertices, std::vector<Edge> edges);

  static Digraph from_names(
      std::vector<std::string> vertices,
      const std::vector<std::pair<std::string, std::string>>& edges);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_->size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(std::size_t id) const { return edges_.at(id); }
  [[nodiscard]] const std::string& name(Vertex v) const { return vertices_->name(v); }

  [[nodiscard]] std::optional<std::size_t> find_edge(Vertex from, Vertex to) const;
  [[nodiscard]] bool has_edge(Vertex from, Vertex to) const {
    return find_edge(from, to).has_value();
  }
  [[nodiscard]] std::span<const std::size_t> out_edges(Vertex v) const { return out_.at(v); }
  [[nodiscard]] std::span<const std::size_t> in_edges(Vertex v) const { return in_.at(v); }

  // Same vertex set, different edge list.
  [[nodiscard]] Digraph with_edges(std::vector<Edge> edges) const {
    return Digraph(vertices_, std::move(edges));
  }

 private:
  VertexSetPtr vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<std::size_t, std::size_t> lookup_;
};

// (x_0, ..., x_n) with n >= 1.
struct DirectedPath {
  std::vector<Vertex> vertices;

  [[nodiscard]] Vertex source() const { return vertices.front(); }
  [[nodiscard]] Vertex target() const { return vertices.back(); }
  [[nodiscard]] std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  [[nodiscard]] bool is_self_avoiding() const;

  auto operator<=>(const DirectedPath&) const = default;
};

// Returns the edge ids of `path` in `g`; Error(NotAPath) if a step is missing.
std::vector<std::size_t> path_edges(const Digraph& g, const DirectedPath& path);

// Unordered edge {a, b}, stored with the orientation of its first appearance.
struct UndirectedEdge {
  Vertex a = 0;
  Vertex b = 0;
  auto operator<=>(const UndirectedEdge&) const = default;
};

std::vector<UndirectedEdge> undirected_shadow(const Digraph& g);
bool shadow_is_connected(const Digraph& g);

struct CycleBasis {
  std::vector<UndirectedEdge> spanning_tree;
  // Closed vertex sequences (front() == back()) over the bidirected shadow.
  std::vector<std::vector<Vertex>> cycles;
};

// Kahn's algorithm, smallest ready vertex first; nullopt when g has a cycle.
std::optional<std::vector<Vertex>> topological_order(const Digraph& g);
bool is_acyclic(const Digraph& g);

// Edges (x, y), x != y, such that y is reachable from x; sorted by (x, y).
Digraph transitive_closure(const Digraph& g);
// Keeps (x, y) iff no z has (x, z), (z, y) in the closure. CyclicInput on cycles.
Digraph transitive_reduction(const Digraph& g);

// BFS spanning tree from vertex 0 over the undirected shadow. Each non-tree edge
// {a, b} (stored direction a -> b) yields the cycle a, b, <tree path b..a>.
CycleBasis fundamental_cycle_basis(const Digraph& g);

}  // namespace flowcouple
