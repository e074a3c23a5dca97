#include "flowcouple/digraph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>

#include "flowcouple/error.hpp"
#include "flowcouple/kernels.hpp"

namespace flowcouple {

VertexSet::VertexSet(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (Vertex v = 0; v < names_.size(); ++v) {
    if (!index_.emplace(names_[v], v).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate vertex \"" + names_[v] + "\"", {v});
    }
  }
}

std::optional<Vertex> VertexSet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex VertexSet::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw Error(ErrorKind::VertexMismatch, "unknown vertex \"" + name + "\"");
  }
  return it->second;
}

VertexSetPtr make_vertex_set(std::vector<std::string> names) {
  return std::make_shared<const VertexSet>(std::move(names));
}

bool same_vertices(const VertexSetPtr& a, const VertexSetPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_vertices(const VertexSetPtr& a, const VertexSetPtr& b, const char* what) {
  if (!same_vertices(a, b)) {
    throw Error(ErrorKind::VertexMismatch, std::string(what) + ": vertex sets differ");
  }
}

Digraph::Digraph(VertexSetPtr vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (!vertices_) throw Error(ErrorKind::InvalidInput, "digraph without vertex set");
  const std::size_t n = vertices_->size();
  out_.resize(n);
  in_.resize(n);
  lookup_.reserve(edges_.size());
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.from >= n || e.to >= n) {
      throw Error(ErrorKind::InvalidInput, "edge endpoint out of range");
    }
    if (e.from == e.to) {
      throw Error(ErrorKind::InvalidInput, "self-loop at \"" + vertices_->name(e.from) + "\"",
                  {e.from});
    }
    if (!lookup_.emplace(e.from * n + e.to, id).second) {
      throw Error(ErrorKind::InvalidInput,
                  "duplicate edge (" + vertices_->name(e.from) + ", " + vertices_->name(e.to) + ")",
                  {e.from, e.to});
    }
    out_[e.from].push_back(id);
    in_[e.to].push_back(id);
  }
}

Digraph Digraph::from_names(std::vector<std::string> vertices,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
  auto vs = make_vertex_set(std::move(vertices));
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [a, b] : edges) list.push_back({vs->index(a), vs->index(b)});
  return Digraph(vs, std::move(list));
}

std::optional<std::size_t> Digraph::find_edge(Vertex from, Vertex to) const {
  const std::size_t n = vertex_count();
  if (from >= n || to >= n) return std::nullopt;
  auto it = lookup_.find(from * n + to);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool DirectedPath::is_self_avoiding() const {
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<std::size_t> path_edges(const Digraph& g, const DirectedPath& path) {
  if (path.vertices.size() < 2) {
    throw Error(ErrorKind::NotAPath, "path needs at least one edge");
  }
  std::vector<std::size_t> ids;
  ids.reserve(path.length());
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    Vertex a = path.vertices[i];
    Vertex b = path.vertices[i + 1];
    auto id = g.find_edge(a, b);
    if (!id) {
      std::string an = a < g.vertex_count() ? g.name(a) : "?";
      std::string bn = b < g.vertex_count() ? g.name(b) : "?";
      throw Error(ErrorKind::NotAPath, "missing edge (" + an + ", " + bn + ")", {a, b});
    }
    ids.push_back(*id);
  }
  return ids;
}

std::vector<UndirectedEdge> undirected_shadow(const Digraph& g) {
  std::vector<UndirectedEdge> result;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : g.edges()) {
    auto key = std::minmax(e.from, e.to);
    if (seen.insert(key).second) result.push_back({e.from, e.to});
  }
  return result;
}

namespace {

std::vector<std::vector<Vertex>> shadow_adjacency(const Digraph& g,
                                                  const std::vector<UndirectedEdge>& shadow) {
  std::vector<std::vector<Vertex>> adj(g.vertex_count());
  for (const auto& e : shadow) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

}  // namespace

bool shadow_is_connected(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return true;
  auto adj = shadow_adjacency(g, undirected_shadow(g));
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == n;
}

std::optional<std::vector<Vertex>> topological_order(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indegree(n, 0);
  for (const Edge& e : g.edges()) ++indegree[e.to];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t id : g.out_edges(v)) {
      Vertex u = g.edge(id).to;
      if (--indegree[u] == 0) ready.push(u);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool is_acyclic(const Digraph& g) { return topological_order(g).has_value(); }

Digraph transitive_closure(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  auto reach = kernels::reachability(g);
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x != y && reach[x * n + y]) edges.push_back({x, y});
    }
  }
  return g.with_edges(std::move(edges));
}

Digraph transitive_reduction(const Digraph& g) {
  if (!is_acyclic(g)) {
    throw Error(ErrorKind::CyclicInput, "transitive reduction needs an acyclic digraph");
  }
  const std::size_t n = g.vertex_count();
  auto reach = kernels::reachability(g);
  auto strict = [&](Vertex a, Vertex b) { return a != b && reach[a * n + b]; };
  std::vector<Edge> kept;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (!strict(x, y)) continue;
      bool covered = true;
      for (Vertex z = 0; z < n && covered; ++z) {
        if (strict(x, z) && strict(z, y)) covered = false;
      }
      if (covered) kept.push_back({x, y});
    }
  }
  // Keep the input's edge order for surviving edges.
  std::vector<Edge> ordered;
  std::set<Edge> keep(kept.begin(), kept.end());
  for (const Edge& e : g.edges()) {
    if (keep.count(e)) ordered.push_back(e);
  }
  return g.with_edges(std::move(ordered));
}

CycleBasis fundamental_cycle_basis(const Digraph& g) {
  if (!shadow_is_connected(g)) {
    throw Error(ErrorKind::Disconnected, "undirected shadow is not connected");
  }
  const std::size_t n = g.vertex_count();
  auto shadow = undirected_shadow(g);
  CycleBasis basis;
  if (n == 0) return basis;

  // BFS in shadow-edge order so that ties follow input order.
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < shadow.size(); ++i) {
    adj[shadow[i].a].push_back({shadow[i].b, i});
    adj[shadow[i].b].push_back({shadow[i].a, i});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(),
              [](const auto& l, const auto& r) { return l.second < r.second; });
  }
  std::vector<std::size_t> parent(n, n);
  std::vector<std::size_t> depth(n, 0);
  std::vector<char> in_tree(shadow.size(), 0);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (auto [u, id] : adj[v]) {
      if (seen[u]) continue;
      seen[u] = 1;
      parent[u] = v;
      depth[u] = depth[v] + 1;
      in_tree[id] = 1;
      queue.push_back(u);
    }
  }
  for (std::size_t i = 0; i < shadow.size(); ++i) {
    if (in_tree[i]) basis.spanning_tree.push_back(shadow[i]);
  }

  for (std::size_t i = 0; i < shadow.size(); ++i) {
    if (in_tree[i]) continue;
    const Vertex tail = shadow[i].a;
    const Vertex head = shadow[i].b;
    // Tree path head -> tail through their lowest common ancestor.
    std::vector<Vertex> up_from_head{head};
    std::vector<Vertex> up_from_tail{tail};
    Vertex h = head;
    Vertex t = tail;
    while (depth[h] > depth[t]) up_from_head.push_back(h = parent[h]);
    while (depth[t] > depth[h]) up_from_tail.push_back(t = parent[t]);
    while (h != t) {
      up_from_head.push_back(h = parent[h]);
      up_from_tail.push_back(t = parent[t]);
    }
    std::vector<Vertex> cycle{tail};
    cycle.insert(cycle.end(), up_from_head.begin(), up_from_head.end());
    // up_from_tail ends at the common ancestor, already present.
    for (auto it = up_from_tail.rbegin() + 1; it != up_from_tail.rend(); ++it) {
      cycle.push_back(*it);
    }
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

}  // namespace flowcouple
