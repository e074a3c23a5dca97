#include "flowcouple/decomposition.hpp"

#include <map>
#include <set>

#include "flowcouple/error.hpp"

namespace flowcouple {

PathMeasure::PathMeasure(VertexSetPtr vertices, std::vector<PathEntry> entries)
    : vertices_(std::move(vertices)), entries_(std::move(entries)) {
  const std::size_t n = vertices_->size();
  for (const auto& e : entries_) {
    if (e.path.vertices.size() < 2) {
      throw Error(ErrorKind::InvalidInput, "path measure entry needs at least one edge");
    }
    for (Vertex v : e.path.vertices) {
      if (v >= n) throw Error(ErrorKind::InvalidInput, "path vertex out of range");
    }
    if (!e.path.is_self_avoiding()) {
      throw Error(ErrorKind::InvalidInput, "path measure entry is not self-avoiding",
                  e.path.vertices);
    }
    if (sgn(e.weight) <= 0) {
      throw Error(ErrorKind::InvalidInput, "path weights must be positive");
    }
  }
}

Rational PathMeasure::total_weight() const {
  Rational s = 0;
  for (const auto& e : entries_) s += e.weight;
  return s;
}

Rational PathMeasure::weighted_length() const {
  Rational s = 0;
  for (const auto& e : entries_) s += e.weight * static_cast<unsigned long>(e.path.length());
  return s;
}

bool PathMeasure::is_stable() const {
  std::set<Vertex> starts;
  for (const auto& e : entries_) starts.insert(e.path.source());
  for (const auto& e : entries_) {
    if (starts.count(e.path.target())) return false;
  }
  return true;
}

SignedMeasure PathMeasure::endpoint_divergence() const {
  std::vector<Rational> d(vertices_->size());
  for (const auto& e : entries_) {
    d[e.path.source()] += e.weight;
    d[e.path.target()] -= e.weight;
  }
  return SignedMeasure(vertices_, std::move(d));
}

PathMeasure path_decompose(const Flow& q) {
  if (!q.has_acyclic_support()) {
    throw Error(ErrorKind::CyclicSupport, "flow support has a directed cycle");
  }
  const Digraph& g = q.digraph();
  const std::size_t n = g.vertex_count();
  std::vector<Rational> residual = q.values();
  std::vector<Rational> div = divergence(q).weights();
  std::vector<PathEntry> entries;

  for (Vertex start = 0; start < n; ++start) {
    while (sgn(div[start]) > 0) {
      std::vector<Vertex> walk{start};
      std::vector<std::size_t> used;
      Vertex v = start;
      while (v == start || sgn(div[v]) >= 0) {
        std::size_t next = g.edge_count();
        for (std::size_t id : g.out_edges(v)) {
          if (sgn(residual[id]) > 0) {
            next = id;
            break;
          }
        }
        if (next == g.edge_count()) {
          throw Error(ErrorKind::Internal, "peeling walk stalled at \"" + g.name(v) + "\"");
        }
        used.push_back(next);
        v = g.edge(next).to;
        walk.push_back(v);
      }
      Rational w = div[start];
      if (-div[v] < w) w = -div[v];
      for (std::size_t id : used) {
        if (residual[id] < w) w = residual[id];
      }
      for (std::size_t id : used) residual[id] -= w;
      div[start] -= w;
      div[v] += w;
      entries.push_back({DirectedPath{std::move(walk)}, w});
    }
  }
  return PathMeasure(g.vertex_set(), std::move(entries));
}

Flow flow_from_decomposition(const PathMeasure& pm, const DigraphPtr& graph) {
  require_same_vertices(pm.vertex_set(), graph->vertex_set(), "flow_from_decomposition");
  Flow q = Flow::zero(graph);
  for (const auto& e : pm.entries()) {
    for (std::size_t id : path_edges(*graph, e.path)) q.add(id, e.weight);
  }
  return q;
}

Rational path_measure_distance(const PathMeasure& a, const PathMeasure& b) {
  std::map<std::vector<Vertex>, Rational> diff;
  for (const auto& e : a.entries()) diff[e.path.vertices] += e.weight;
  for (const auto& e : b.entries()) diff[e.path.vertices] -= e.weight;
  Rational s = 0;
  for (const auto& [path, w] : diff) s += abs_value(w);
  return s;
}

namespace {

DigraphPtr union_digraph(const PathMeasure& pm) {
  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (const auto& e : pm.entries()) {
    const auto& vs = e.path.vertices;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      Edge edge{vs[i], vs[i + 1]};
      if (seen.insert(edge).second) edges.push_back(edge);
    }
  }
  return share(Digraph(pm.vertex_set(), std::move(edges)));
}

DirectedPath concat(const DirectedPath& first, const DirectedPath& second) {
  DirectedPath p = first;
  p.vertices.insert(p.vertices.end(), second.vertices.begin() + 1, second.vertices.end());
  return p;
}

class Stabilizer {
 public:
  void insert(const PathEntry& entry) {
    const Vertex x = entry.path.source();
    const Vertex y = entry.path.target();
    Rational q = entry.weight;

    std::vector<PathEntry> pieces;
    while (sgn(q) > 0) {
      auto idx = lightest([&](const PathEntry& e) { return e.path.target() == x; });
      if (!idx) break;
      Rational t = entries_[*idx].weight < q ? entries_[*idx].weight : q;
      entries_[*idx].weight -= t;
      q -= t;
      pieces.push_back({concat(entries_[*idx].path, entry.path), t});
    }
    if (sgn(q) > 0) pieces.push_back({entry.path, q});

    for (auto& piece : pieces) {
      Rational r = piece.weight;
      while (sgn(r) > 0) {
        auto idx = lightest([&](const PathEntry& e) { return e.path.source() == y; });
        if (!idx) break;
        Rational s = entries_[*idx].weight < r ? entries_[*idx].weight : r;
        entries_[*idx].weight -= s;
        r -= s;
        added_.push_back({concat(piece.path, entries_[*idx].path), s});
      }
      if (sgn(r) > 0) added_.push_back({piece.path, r});
    }
    for (auto& e : added_) entries_.push_back(std::move(e));
    added_.clear();
    std::erase_if(entries_, [](const PathEntry& e) { return sgn(e.weight) == 0; });
  }

  [[nodiscard]] const std::vector<PathEntry>& entries() const { return entries_; }

 private:
  template <class Pred>
  std::optional<std::size_t> lightest(Pred pred) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (sgn(entries_[i].weight) <= 0 || !pred(entries_[i])) continue;
      if (!best || entries_[i].weight < entries_[*best].weight) best = i;
    }
    return best;
  }

  std::vector<PathEntry> entries_;
  std::vector<PathEntry> added_;
};

}  // namespace

StabilizationTrace stabilize_decomposition_traced(const PathMeasure& pm) {
  if (!flow_from_decomposition(pm, union_digraph(pm)).has_acyclic_support()) {
    throw Error(ErrorKind::CyclicSupport, "induced flow has a directed cycle");
  }
  StabilizationTrace trace{PathMeasure(pm.vertex_set()), {}, {}};
  Stabilizer s;
  for (const auto& entry : pm.entries()) {
    PathMeasure before(pm.vertex_set(), s.entries());
    s.insert(entry);
    PathMeasure after(pm.vertex_set(), s.entries());
    trace.inserted_weight.push_back(entry.weight);
    trace.drift.push_back(path_measure_distance(before, after));
  }
  trace.result = PathMeasure(pm.vertex_set(), s.entries());
  return trace;
}

PathMeasure stabilize_decomposition(const PathMeasure& pm) {
  return stabilize_decomposition_traced(pm).result;
}

}  // namespace flowcouple
