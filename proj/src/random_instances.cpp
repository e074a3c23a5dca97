#include "flowcouple/random_instances.hpp"

#include <algorithm>
#include <numeric>

#include "flowcouple/error.hpp"

namespace flowcouple::random {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

VertexSetPtr numbered_vertices(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return make_vertex_set(std::move(names));
}

Rational small_rational(Rng& rng, long lo, long hi, long denominator) {
  Rational r(std::uniform_int_distribution<long>(lo, hi)(rng), denominator);
  r.canonicalize();
  return r;
}

Measure random_measure(Rng& rng, const VertexSetPtr& vs, double zero_prob) {
  std::vector<Rational> w(vs->size());
  for (auto& x : w) {
    if (!coin(rng, zero_prob)) x = small_rational(rng, 0, 6, 6);
  }
  return Measure(vs, std::move(w));
}

Measure random_probability(Rng& rng, const VertexSetPtr& vs, double zero_prob) {
  Measure m = random_measure(rng, vs, zero_prob);
  if (sgn(m.total()) == 0) return Measure::dirac(vs, uniform_index(rng, 0, vs->size() - 1));
  return scaled(m, 1 / m.total());
}

Measure random_positive_probability(Rng& rng, const VertexSetPtr& vs) {
  std::vector<Rational> w(vs->size());
  for (auto& x : w) x = small_rational(rng, 1, 6, 6);
  Measure m(vs, std::move(w));
  return scaled(m, 1 / m.total());
}

Digraph random_dag(Rng& rng, const VertexSetPtr& vs, double p) {
  std::vector<Vertex> perm(vs->size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (coin(rng, p)) edges.push_back({perm[i], perm[j]});
    }
  }
  std::sort(edges.begin(), edges.end());
  return Digraph(vs, std::move(edges));
}

PartialOrderRelation random_poset(Rng& rng, std::size_t n, double p) {
  return PartialOrderRelation::from_digraph(random_dag(rng, numbered_vertices(n), p));
}

std::pair<Measure, Measure> random_dominated_pair(Rng& rng, const PartialOrderRelation& rel) {
  const auto& vs = rel.vertex_set();
  Measure mu1 = random_probability(rng, vs);
  std::vector<Rational> w2(vs->size());
  for (Vertex x = 0; x < vs->size(); ++x) {
    if (sgn(mu1[x]) == 0) continue;
    std::vector<Vertex> above;
    for (Vertex y = 0; y < vs->size(); ++y) {
      if (rel.leq(x, y)) above.push_back(y);
    }
    // Split into up to three parts.
    Rational left = mu1[x];
    std::size_t parts = uniform_index(rng, 1, 3);
    for (std::size_t k = 0; k + 1 < parts; ++k) {
      Rational piece = left * small_rational(rng, 0, 2, 2);
      w2[above[uniform_index(rng, 0, above.size() - 1)]] += piece;
      left -= piece;
    }
    w2[above[uniform_index(rng, 0, above.size() - 1)]] += left;
  }
  return {mu1, Measure(vs, std::move(w2))};
}

Flow random_acyclic_flow(Rng& rng, std::size_t n, double p) {
  auto g = share(random_dag(rng, numbered_vertices(n), p));
  std::vector<Rational> values(g->edge_count());
  for (auto& v : values) v = small_rational(rng, 0, 4, 4);
  return Flow(g, std::move(values));
}

Measure random_admissible_source(Rng& rng, const Flow& q) {
  auto div = divergence(q);
  Measure extra = random_measure(rng, q.vertex_set(), 0.5);
  std::vector<Rational> w(div.size());
  for (Vertex v = 0; v < w.size(); ++v) w[v] = positive_part(div[v]) + extra[v];
  return Measure(q.vertex_set(), std::move(w));
}

WeightedDigraph random_connected_weighted(Rng& rng, std::size_t n, double p) {
  auto vs = numbered_vertices(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex parent = uniform_index(rng, 0, v - 1);
    edges.push_back({parent, v});
    edges.push_back({v, parent});
  }
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x == y) continue;
      bool present = std::find(edges.begin(), edges.end(), Edge{x, y}) != edges.end();
      if (!present && coin(rng, p)) edges.push_back({x, y});
    }
  }
  std::vector<Rational> w(edges.size());
  for (auto& x : w) x = small_rational(rng, 1, 5, 2);
  return WeightedDigraph(share(Digraph(vs, std::move(edges))), std::move(w));
}

Digraph random_tree_hasse(Rng& rng, std::size_t n) {
  auto vs = numbered_vertices(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex parent = uniform_index(rng, 0, v - 1);
    edges.push_back(coin(rng, 0.5) ? Edge{parent, v} : Edge{v, parent});
  }
  return Digraph(vs, std::move(edges));
}

Digraph random_ring_hasse(Rng& rng, std::size_t n) {
  // An acyclic triangle always has a shortcut edge.
  if (n < 4) throw Error(ErrorKind::InvalidInput, "a ring Hasse diagram needs at least 4 vertices");
  auto vs = numbered_vertices(n);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (;;) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      Vertex a = perm[i];
      Vertex b = perm[(i + 1) % n];
      edges.push_back(coin(rng, 0.5) ? Edge{a, b} : Edge{b, a});
    }
    Digraph g(vs, edges);
    if (!is_acyclic(g)) continue;
    if (transitive_reduction(g).edge_count() == n) return g;
  }
}

WeightedDigraph random_weighted_ring(Rng& rng, std::size_t n, double one_way) {
  auto vs = numbered_vertices(n);
  bool clockwise = coin(rng, 0.5);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    Vertex a = i;
    Vertex b = (i + 1) % n;
    if (coin(rng, one_way)) {
      edges.push_back(clockwise ? Edge{a, b} : Edge{b, a});
    } else {
      edges.push_back({a, b});
      edges.push_back({b, a});
    }
  }
  std::vector<Rational> w(edges.size());
  for (auto& x : w) x = small_rational(rng, 1, 5, 2);
  return WeightedDigraph(share(Digraph(vs, std::move(edges))), std::move(w));
}

WeightedChain random_weighted_chain(Rng& rng, std::size_t n, bool symmetric) {
  auto vs = numbered_vertices(n);
  std::vector<Edge> edges;
  std::vector<Rational> w;
  WeightedChain out{WeightedDigraph(share(Digraph(vs, {})), {}), {}, {}, {}};
  for (Vertex i = 0; i < n; ++i) out.chain.push_back(i);
  for (Vertex i = 0; i + 1 < n; ++i) {
    Rational f = small_rational(rng, 1, 5, 2);
    Rational b = symmetric ? f : small_rational(rng, 1, 5, 2);
    edges.push_back({i, i + 1});
    w.push_back(f);
    edges.push_back({i + 1, i});
    w.push_back(b);
    out.forward.push_back(f);
    out.backward.push_back(b);
  }
  out.graph = WeightedDigraph(share(Digraph(vs, std::move(edges))), std::move(w));
  return out;
}

}  // namespace flowcouple::random
