#include "flowcouple/flow.hpp"

#include <algorithm>

#include "flowcouple/error.hpp"

namespace flowcouple {

Flow::Flow(DigraphPtr graph, std::vector<Rational> values)
    : graph_(std::move(graph)), values_(std::move(values)) {
  if (!graph_) throw Error(ErrorKind::InvalidInput, "flow without digraph");
  if (values_.size() != graph_->edge_count()) {
    throw Error(ErrorKind::InvalidInput, "flow has " + std::to_string(values_.size()) +
                                             " values for " +
                                             std::to_string(graph_->edge_count()) + " edges");
  }
  for (std::size_t id = 0; id < values_.size(); ++id) {
    if (sgn(values_[id]) < 0) {
      const Edge& e = graph_->edge(id);
      throw Error(ErrorKind::InvalidInput,
                  "negative flow on (" + graph_->name(e.from) + ", " + graph_->name(e.to) + ")",
                  {e.from, e.to});
    }
  }
}

Flow Flow::zero(DigraphPtr graph) {
  std::size_t m = graph->edge_count();
  return Flow(std::move(graph), std::vector<Rational>(m));
}

Rational Flow::value(Vertex from, Vertex to) const {
  auto id = graph_->find_edge(from, to);
  return id ? values_[*id] : Rational(0);
}

Rational Flow::total() const {
  Rational s = 0;
  for (const auto& v : values_) s += v;
  return s;
}

bool Flow::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

Digraph Flow::support_digraph() const {
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < values_.size(); ++id) {
    if (sgn(values_[id]) > 0) edges.push_back(graph_->edge(id));
  }
  return graph_->with_edges(std::move(edges));
}

void Flow::add(std::size_t edge_id, const Rational& delta) {
  Rational& v = values_.at(edge_id);
  v += delta;
  if (sgn(v) < 0) throw Error(ErrorKind::Internal, "flow update went negative");
}

bool Flow::same_values(const Flow& other) const {
  if (!same_vertices(vertex_set(), other.vertex_set())) return false;
  for (std::size_t id = 0; id < values_.size(); ++id) {
    const Edge& e = graph_->edge(id);
    if (values_[id] != other.value(e.from, e.to)) return false;
  }
  for (std::size_t id = 0; id < other.values_.size(); ++id) {
    const Edge& e = other.graph_->edge(id);
    if (!graph_->has_edge(e.from, e.to) && sgn(other.values_[id]) != 0) return false;
  }
  return true;
}

bool Flow::dominated_by(const Flow& other) const {
  for (std::size_t id = 0; id < values_.size(); ++id) {
    const Edge& e = graph_->edge(id);
    if (values_[id] > other.value(e.from, e.to)) return false;
  }
  return true;
}

SignedMeasure divergence(const Flow& q) {
  std::vector<Rational> d(q.digraph().vertex_count());
  const auto& edges = q.digraph().edges();
  for (std::size_t id = 0; id < edges.size(); ++id) {
    d[edges[id].from] += q.value(id);
    d[edges[id].to] -= q.value(id);
  }
  return SignedMeasure(q.vertex_set(), std::move(d));
}

Flow flow_from_path(const DigraphPtr& graph, const DirectedPath& path) {
  Flow q = Flow::zero(graph);
  for (std::size_t id : path_edges(*graph, path)) q.add(id, 1);
  return q;
}

Rational pairing(const Flow& q, const std::vector<Rational>& weights) {
  if (weights.size() != q.values().size()) {
    throw Error(ErrorKind::InvalidInput, "weight vector does not match edge count");
  }
  Rational s = 0;
  for (std::size_t id = 0; id < weights.size(); ++id) s += q.value(id) * weights[id];
  return s;
}

DiscreteVectorField::DiscreteVectorField(VertexSetPtr vertices, std::vector<UndirectedEdge> edges,
                                         std::vector<Rational> values)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), values_(std::move(values)) {
  if (edges_.size() != values_.size()) {
    throw Error(ErrorKind::InvalidInput, "field values do not match its edges");
  }
  const std::size_t n = vertices_->size();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [a, b] = edges_[i];
    if (a >= n || b >= n || a == b) throw Error(ErrorKind::InvalidInput, "bad field edge");
    auto key = std::min(a, b) * n + std::max(a, b);
    if (!lookup_.emplace(key, i).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate field edge", {a, b});
    }
  }
}

bool DiscreteVectorField::contains(Vertex x, Vertex y) const {
  const std::size_t n = vertices_->size();
  return lookup_.count(std::min(x, y) * n + std::max(x, y)) != 0;
}

Rational DiscreteVectorField::value(Vertex x, Vertex y) const {
  const std::size_t n = vertices_->size();
  auto it = lookup_.find(std::min(x, y) * n + std::max(x, y));
  if (it == lookup_.end()) return 0;
  const Rational& v = values_[it->second];
  return edges_[it->second].a == x ? v : Rational(-v);
}

SignedMeasure DiscreteVectorField::divergence() const {
  std::vector<Rational> d(vertices_->size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    d[edges_[i].a] += values_[i];
    d[edges_[i].b] -= values_[i];
  }
  return SignedMeasure(vertices_, std::move(d));
}

bool DiscreteVectorField::operator==(const DiscreteVectorField& other) const {
  if (!same_vertices(vertices_, other.vertices_)) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (other.value(edges_[i].a, edges_[i].b) != values_[i]) return false;
  }
  for (std::size_t i = 0; i < other.edges_.size(); ++i) {
    if (!contains(other.edges_[i].a, other.edges_[i].b) && sgn(other.values_[i]) != 0) return false;
  }
  return true;
}

DiscreteVectorField gradient_field(VertexSetPtr vertices, std::vector<UndirectedEdge> edges,
                                   const std::vector<Rational>& f) {
  std::vector<Rational> values;
  values.reserve(edges.size());
  for (const auto& e : edges) values.push_back(f.at(e.b) - f.at(e.a));
  return DiscreteVectorField(std::move(vertices), std::move(edges), std::move(values));
}

DiscreteVectorField cycle_field(VertexSetPtr vertices, const std::vector<Vertex>& closed_cycle) {
  std::vector<UndirectedEdge> edges;
  for (std::size_t i = 0; i + 1 < closed_cycle.size(); ++i) {
    edges.push_back({closed_cycle[i], closed_cycle[i + 1]});
  }
  std::vector<Rational> ones(edges.size(), Rational(1));
  return DiscreteVectorField(std::move(vertices), std::move(edges), std::move(ones));
}

DiscreteVectorField project_to_field(const Flow& q) {
  const Digraph& g = q.digraph();
  auto shadow = undirected_shadow(g);
  std::vector<Rational> values;
  values.reserve(shadow.size());
  for (const auto& e : shadow) values.push_back(q.value(e.a, e.b) - q.value(e.b, e.a));
  return DiscreteVectorField(g.vertex_set(), std::move(shadow), std::move(values));
}

Flow minimal_flow_from_field(const DiscreteVectorField& phi, const DigraphPtr& graph) {
  require_same_vertices(phi.vertex_set(), graph->vertex_set(), "minimal_flow_from_field");
  for (std::size_t i = 0; i < phi.edges().size(); ++i) {
    auto [a, b] = phi.edges()[i];
    const Rational& v = phi.values()[i];
    Vertex from = sgn(v) > 0 ? a : b;
    Vertex to = sgn(v) > 0 ? b : a;
    if (sgn(v) != 0 && !graph->has_edge(from, to)) {
      throw Error(ErrorKind::UnrepresentableField,
                  "field is positive on (" + graph->name(from) + ", " + graph->name(to) +
                      ") which is not an edge",
                  {from, to});
    }
  }
  std::vector<Rational> values(graph->edge_count());
  for (std::size_t id = 0; id < values.size(); ++id) {
    const Edge& e = graph->edge(id);
    values[id] = positive_part(phi.value(e.from, e.to));
  }
  return Flow(graph, std::move(values));
}

namespace {

// Edge ids of the first cycle met by DFS over positive edges, or empty.
std::vector<std::size_t> find_cycle(const Flow& q) {
  const Digraph& g = q.digraph();
  const std::size_t n = g.vertex_count();
  enum : char { White, Grey, Black };
  std::vector<char> colour(n, White);
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  // Edge used to enter each grey vertex.
  std::vector<std::size_t> via(n, 0);
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    std::vector<Frame> stack{{root, 0}};
    colour[root] = Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      auto out = g.out_edges(top.v);
      if (top.next == out.size()) {
        colour[top.v] = Black;
        stack.pop_back();
        continue;
      }
      std::size_t id = out[top.next++];
      if (sgn(q.value(id)) <= 0) continue;
      Vertex u = g.edge(id).to;
      if (colour[u] == Grey) {
        std::vector<std::size_t> cycle{id};
        Vertex w = top.v;
        while (w != u) {
          cycle.push_back(via[w]);
          w = g.edge(via[w]).from;
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (colour[u] == White) {
        colour[u] = Grey;
        via[u] = id;
        stack.push_back({u, 0});
      }
    }
  }
  return {};
}

}  // namespace

Flow remove_cycles(const Flow& q) {
  Flow result = q;
  for (;;) {
    auto cycle = find_cycle(result);
    if (cycle.empty()) return result;
    Rational m = result.value(cycle.front());
    for (std::size_t id : cycle) m = std::min(m, result.value(id));
    for (std::size_t id : cycle) result.add(id, -m);
  }
}

}  // namespace flowcouple
