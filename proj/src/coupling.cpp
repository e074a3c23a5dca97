#include "flowcouple/coupling.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "flowcouple/error.hpp"

namespace flowcouple {

Coupling::Coupling(VertexSetPtr vertices)
    : vertices_(std::move(vertices)), mass_(vertices_->size() * vertices_->size()) {}

Coupling::Coupling(VertexSetPtr vertices, std::vector<Rational> dense)
    : vertices_(std::move(vertices)), mass_(std::move(dense)) {
  if (mass_.size() != size() * size()) {
    throw Error(ErrorKind::InvalidInput, "coupling matrix has the wrong size");
  }
  for (const auto& m : mass_) {
    if (sgn(m) < 0) throw Error(ErrorKind::InvalidInput, "negative coupling mass");
  }
}

Coupling Coupling::diagonal(const Measure& m) {
  Coupling c(m.vertex_set());
  for (Vertex v = 0; v < m.size(); ++v) c.set(v, v, m[v]);
  return c;
}

void Coupling::set(Vertex x, Vertex y, Rational value) {
  if (sgn(value) < 0) throw Error(ErrorKind::InvalidInput, "negative coupling mass", {x, y});
  mass_.at(x * size() + y) = std::move(value);
}

void Coupling::add(Vertex x, Vertex y, const Rational& value) {
  Rational& cell = mass_.at(x * size() + y);
  cell += value;
  if (sgn(cell) < 0) throw Error(ErrorKind::Internal, "coupling update went negative", {x, y});
}

Rational Coupling::total() const {
  Rational s = 0;
  for (const auto& m : mass_) s += m;
  return s;
}

Rational Coupling::off_diagonal_mass() const {
  Rational s = 0;
  for (Vertex x = 0; x < size(); ++x) {
    for (Vertex y = 0; y < size(); ++y) {
      if (x != y) s += (*this)(x, y);
    }
  }
  return s;
}

std::vector<std::pair<Vertex, Vertex>> Coupling::support() const {
  std::vector<std::pair<Vertex, Vertex>> result;
  for (Vertex x = 0; x < size(); ++x) {
    for (Vertex y = 0; y < size(); ++y) {
      if (sgn((*this)(x, y)) > 0) result.emplace_back(x, y);
    }
  }
  return result;
}

Rational Coupling::expected_cost(const std::vector<std::optional<Rational>>& cost) const {
  if (cost.size() != mass_.size()) throw Error(ErrorKind::InvalidInput, "cost matrix has the wrong size");
  Rational s = 0;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (sgn(mass_[i]) == 0) continue;
    if (!cost[i]) {
      throw Error(ErrorKind::Infeasible, "coupling puts mass on an infinite-cost pair",
                  {i / size(), i % size()});
    }
    s += mass_[i] * *cost[i];
  }
  return s;
}

bool Coupling::operator==(const Coupling& other) const {
  return same_vertices(vertices_, other.vertices_) && mass_ == other.mass_;
}

std::pair<Measure, Measure> marginals(const Coupling& c) {
  const std::size_t n = c.size();
  std::vector<Rational> row(n);
  std::vector<Rational> col(n);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      row[x] += c(x, y);
      col[y] += c(x, y);
    }
  }
  return {Measure(c.vertex_set(), std::move(row)), Measure(c.vertex_set(), std::move(col))};
}

bool is_compatible(const Coupling& c, const PartialOrderRelation& rel) {
  require_same_vertices(c.vertex_set(), rel.vertex_set(), "is_compatible");
  for (auto [x, y] : c.support()) {
    if (!rel.leq(x, y)) return false;
  }
  return true;
}

PathChoice single_path_choice(const Coupling& c,
                              const std::map<std::pair<Vertex, Vertex>, DirectedPath>& paths) {
  PathChoice choice;
  for (auto [x, y] : c.support()) {
    if (x == y) continue;
    auto it = paths.find({x, y});
    if (it == paths.end()) {
      throw Error(ErrorKind::MissingPath,
                  "no path supplied for (" + c.vertex_set()->name(x) + ", " +
                      c.vertex_set()->name(y) + ")",
                  {x, y});
    }
    choice[{x, y}] = {PathEntry{it->second, c(x, y)}};
  }
  return choice;
}

PathChoice shortest_path_choice(const Coupling& c, const Digraph& g) {
  require_same_vertices(c.vertex_set(), g.vertex_set(), "shortest_path_choice");
  const std::size_t n = g.vertex_count();
  PathChoice choice;
  std::vector<std::vector<std::size_t>> parent_cache(n);
  for (auto [x, y] : c.support()) {
    if (x == y) continue;
    auto& parent = parent_cache[x];
    if (parent.empty()) {
      parent.assign(n, n);
      parent[x] = x;
      std::deque<Vertex> queue{x};
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (std::size_t id : g.out_edges(v)) {
          Vertex u = g.edge(id).to;
          if (parent[u] == n) {
            parent[u] = v;
            queue.push_back(u);
          }
        }
      }
    }
    if (parent[y] == n) {
      throw Error(ErrorKind::MissingPath,
                  "\"" + g.name(y) + "\" is not reachable from \"" + g.name(x) + "\"", {x, y});
    }
    std::vector<Vertex> walk{y};
    while (walk.back() != x) walk.push_back(parent[walk.back()]);
    std::reverse(walk.begin(), walk.end());
    choice[{x, y}] = {PathEntry{DirectedPath{std::move(walk)}, c(x, y)}};
  }
  return choice;
}

Flow flow_from_coupling(const Coupling& c, const DigraphPtr& graph, const PathChoice& choice) {
  require_same_vertices(c.vertex_set(), graph->vertex_set(), "flow_from_coupling");
  const auto& vs = *c.vertex_set();
  Flow q = Flow::zero(graph);
  for (auto [x, y] : c.support()) {
    if (x == y) continue;
    auto it = choice.find({x, y});
    if (it == choice.end() || it->second.empty()) {
      throw Error(ErrorKind::MissingPath,
                  "no path supplied for (" + vs.name(x) + ", " + vs.name(y) + ")", {x, y});
    }
    Rational carried = 0;
    for (const auto& entry : it->second) {
      if (entry.path.vertices.size() < 2 || entry.path.source() != x || entry.path.target() != y) {
        throw Error(ErrorKind::MissingPath,
                    "supplied path does not run from \"" + vs.name(x) + "\" to \"" + vs.name(y) + "\"",
                    {x, y});
      }
      for (std::size_t id : path_edges(*graph, entry.path)) q.add(id, entry.weight);
      carried += entry.weight;
    }
    if (carried != c(x, y)) {
      throw Error(ErrorKind::WeightMismatch,
                  "path weights for (" + vs.name(x) + ", " + vs.name(y) + ") add up to " +
                      to_string(carried) + " instead of " + to_string(c(x, y)),
                  {x, y});
    }
  }
  for (const auto& [pair, entries] : choice) {
    if (sgn(c(pair.first, pair.second)) == 0 && !entries.empty()) {
      Rational carried = 0;
      for (const auto& e : entries) carried += e.weight;
      if (sgn(carried) != 0) {
        throw Error(ErrorKind::WeightMismatch, "paths supplied for a pair without mass",
                    {pair.first, pair.second});
      }
    }
  }
  return q;
}

bool is_economic(const Coupling& c) {
  std::vector<Edge> edges;
  for (auto [x, y] : c.support()) {
    if (x != y) edges.push_back({x, y});
  }
  return is_acyclic(Digraph(c.vertex_set(), std::move(edges)));
}

Measure target_measure(const Flow& q, const Measure& mu1) {
  require_same_vertices(q.vertex_set(), mu1.vertex_set(), "target measure");
  auto div = divergence(q);
  std::vector<Rational> w(mu1.size());
  for (Vertex v = 0; v < w.size(); ++v) {
    w[v] = mu1[v] - div[v];
    if (sgn(w[v]) < 0) {
      throw Error(ErrorKind::NegativeTarget,
                  "mu1 - div Q is " + to_string(w[v]) + " at \"" + mu1.vertex_set()->name(v) + "\"",
                  {v});
    }
  }
  return Measure(mu1.vertex_set(), std::move(w));
}

namespace {

struct Parcel {
  Vertex type;
  std::vector<Vertex> path;
  Rational amount;
};

}  // namespace

LedgerResult coupling_from_flow_ledger_traced(const Flow& q, const Measure& mu1) {
  if (!q.has_acyclic_support()) {
    throw Error(ErrorKind::CyclicSupport, "flow support has a directed cycle");
  }
  target_measure(q, mu1);
  const Digraph& g = q.digraph();
  const std::size_t n = g.vertex_count();

  // ledger[x]: parcels currently sitting at x, kept sorted by type (stable).
  std::vector<std::vector<Parcel>> ledger(n);
  for (Vertex x = 0; x < n; ++x) {
    if (sgn(mu1[x]) > 0) ledger[x].push_back({x, {x}, mu1[x]});
  }
  std::vector<std::size_t> pending_in(n, 0);
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    if (sgn(q.value(id)) > 0) ++pending_in[g.edge(id).to];
  }
  std::vector<char> done(n, 0);

  for (std::size_t step = 0; step < n; ++step) {
    Vertex x = n;
    for (Vertex v = 0; v < n; ++v) {
      if (!done[v] && pending_in[v] == 0) {
        x = v;
        break;
      }
    }
    if (x == n) throw Error(ErrorKind::Internal, "no source vertex left in an acyclic support");
    done[x] = 1;

    std::stable_sort(ledger[x].begin(), ledger[x].end(),
                     [](const Parcel& a, const Parcel& b) { return a.type < b.type; });
    // Outgoing demand in increasing target order.
    std::vector<std::size_t> out(g.out_edges(x).begin(), g.out_edges(x).end());
    std::sort(out.begin(), out.end(),
              [&](std::size_t a, std::size_t b) { return g.edge(a).to < g.edge(b).to; });
    std::size_t cursor = 0;
    for (std::size_t id : out) {
      Rational demand = q.value(id);
      if (sgn(demand) <= 0) continue;
      Vertex z = g.edge(id).to;
      while (sgn(demand) > 0) {
        while (cursor < ledger[x].size() && sgn(ledger[x][cursor].amount) == 0) ++cursor;
        if (cursor == ledger[x].size()) {
          throw Error(ErrorKind::InsufficientMass,
                      "not enough mass at \"" + g.name(x) + "\" to fund its outflow", {x});
        }
        Parcel& p = ledger[x][cursor];
        Rational t = p.amount < demand ? p.amount : demand;
        p.amount -= t;
        demand -= t;
        std::vector<Vertex> path = p.path;
        path.push_back(z);
        ledger[z].push_back({p.type, std::move(path), t});
      }
      --pending_in[z];
    }
    std::erase_if(ledger[x], [](const Parcel& p) { return sgn(p.amount) == 0; });
  }

  LedgerResult result{Coupling(g.vertex_set()), {}};
  for (Vertex x = 0; x < n; ++x) {
    for (const Parcel& p : ledger[x]) {
      result.coupling.add(p.type, x, p.amount);
      if (p.type == x) continue;
      auto& entries = result.paths[{p.type, x}];
      bool merged = false;
      for (auto& e : entries) {
        if (e.path.vertices == p.path) {
          e.weight += p.amount;
          merged = true;
          break;
        }
      }
      if (!merged) entries.push_back({DirectedPath{p.path}, p.amount});
    }
  }
  return result;
}

Coupling coupling_from_flow_ledger(const Flow& q, const Measure& mu1) {
  return coupling_from_flow_ledger_traced(q, mu1).coupling;
}

Coupling coupling_from_decomposition(const PathMeasure& pm, const Measure& mu1, const Measure& mu2) {
  Coupling c = Coupling::diagonal(pointwise_min(mu1, mu2));
  for (const auto& e : pm.entries()) c.add(e.path.source(), e.path.target(), e.weight);
  return c;
}

Coupling coupling_from_flow_decomposition(const Flow& q, const Measure& mu1) {
  if (!q.has_acyclic_support()) {
    throw Error(ErrorKind::CyclicSupport, "flow support has a directed cycle");
  }
  Measure mu2 = target_measure(q, mu1);
  return coupling_from_decomposition(path_decompose(q), mu1, mu2);
}

}  // namespace flowcouple
