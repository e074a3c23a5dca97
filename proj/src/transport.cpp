#include "flowcouple/transport.hpp"

#include <algorithm>
#include <random>

#include "flowcouple/error.hpp"
#include "flowcouple/kernels.hpp"
#include "flowcouple/lattice.hpp"
#include "flowcouple/network.hpp"

namespace flowcouple {

WeightedDigraph::WeightedDigraph(DigraphPtr g, std::vector<Rational> w)
    : graph(std::move(g)), weights(std::move(w)) {
  if (!graph) throw Error(ErrorKind::InvalidInput, "weighted digraph without digraph");
  if (weights.size() != graph->edge_count()) {
    throw Error(ErrorKind::InvalidInput, "every edge needs exactly one weight");
  }
  for (std::size_t id = 0; id < weights.size(); ++id) {
    if (sgn(weights[id]) < 0) {
      const Edge& e = graph->edge(id);
      throw Error(ErrorKind::InvalidInput,
                  "negative weight on (" + graph->name(e.from) + ", " + graph->name(e.to) + ")",
                  {e.from, e.to});
    }
  }
}

namespace {

void require_transport_pair(const VertexSetPtr& vs, const Measure& mu1, const Measure& mu2) {
  require_same_vertices(vs, mu1.vertex_set(), "transport");
  require_same_vertices(vs, mu2.vertex_set(), "transport");
  if (mu1.total() != mu2.total()) {
    throw Error(ErrorKind::InvalidInput, "transport needs equal total masses, got " +
                                             to_string(mu1.total()) + " and " +
                                             to_string(mu2.total()));
  }
}

[[noreturn]] void unreachable(const WeightedDigraph& wg, Vertex x, Vertex y) {
  throw Error(ErrorKind::Unreachable,
              "no directed path from \"" + wg.digraph().name(x) + "\" to \"" + wg.digraph().name(y) + "\"",
              {x, y});
}

// Min-cost flow with divergence mu1 - mu2 on the edges of wg (cycles kept).
Flow min_cost_flow(const WeightedDigraph& wg, const Measure& mu1, const Measure& mu2) {
  const Digraph& g = wg.digraph();
  const std::size_t n = g.vertex_count();
  Network net(n + 2);
  std::vector<std::size_t> arc(g.edge_count());
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    arc[id] = net.add_arc(g.edge(id).from, g.edge(id).to, std::nullopt, wg.weights[id]);
  }
  auto d = difference(mu1, mu2);
  Rational supply = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (sgn(d[v]) > 0) {
      net.add_arc(n, v, d[v]);
      supply += d[v];
    } else if (sgn(d[v]) < 0) {
      net.add_arc(v, n + 1, Rational(-d[v]));
    }
  }
  Rational pushed = net.min_cost_flow(n, n + 1, supply);
  if (pushed != supply) {
    throw Error(ErrorKind::Infeasible, "only " + to_string(pushed) + " of " + to_string(supply) +
                                           " units can reach their demands");
  }
  std::vector<Rational> values(g.edge_count());
  for (std::size_t id = 0; id < values.size(); ++id) values[id] = net.flow(arc[id]);
  return Flow(wg.graph, std::move(values));
}

}  // namespace

Rational geodesic_cost(const WeightedDigraph& wg, Vertex x, Vertex y) {
  auto sp = kernels::shortest_paths_from(wg.digraph(), wg.weights, x);
  if (!sp.dist.at(y)) unreachable(wg, x, y);
  return *sp.dist[y];
}

DirectedPath geodesic_path(const WeightedDigraph& wg, Vertex x, Vertex y) {
  const Digraph& g = wg.digraph();
  auto sp = kernels::shortest_paths_from(g, wg.weights, x);
  if (!sp.dist.at(y)) unreachable(wg, x, y);
  std::vector<Vertex> walk{y};
  while (walk.back() != x) walk.push_back(g.edge(sp.via[walk.back()]).from);
  std::reverse(walk.begin(), walk.end());
  return DirectedPath{std::move(walk)};
}

CostMatrix geodesic_cost_matrix(const WeightedDigraph& wg) {
  return {wg.vertex_set(), kernels::geodesic_matrix(wg.digraph(), wg.weights)};
}

TransportResult beckmann_min(const WeightedDigraph& wg, const Measure& mu1, const Measure& mu2) {
  require_transport_pair(wg.vertex_set(), mu1, mu2);
  Flow q = remove_cycles(min_cost_flow(wg, mu1, mu2));
  Rational value = pairing(q, wg.weights);
  Coupling rho = coupling_from_flow_decomposition(q, mu1);
  return {std::move(value), std::move(q), std::move(rho)};
}

namespace {

// Negative cycle in the residual graph of a transportation plan: rows 0..n-1,
// columns n..2n-1; row -> column arcs for finite costs, column -> row arcs for
// positive mass. Returns the cycle as (row, column) cells with +1/-1 sign.
std::optional<std::vector<std::pair<std::size_t, int>>> negative_cycle(
    const CostMatrix& costs, const std::vector<Rational>& plan) {
  const std::size_t n = costs.size();
  struct Arc {
    std::size_t from, to, cell;
    int sign;
    Rational cost;
  };
  std::vector<Arc> arcs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& c = costs(x, y);
      if (!c) continue;
      arcs.push_back({x, n + y, x * n + y, +1, *c});
      if (sgn(plan[x * n + y]) > 0) arcs.push_back({n + y, x, x * n + y, -1, -*c});
    }
  }
  const std::size_t nodes = 2 * n;
  std::vector<Rational> dist(nodes);
  std::vector<std::size_t> pred(nodes, arcs.size());
  std::size_t touched = nodes;
  for (std::size_t round = 0; round < nodes; ++round) {
    touched = nodes;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      Rational nd = dist[arcs[a].from] + arcs[a].cost;
      if (nd < dist[arcs[a].to]) {
        dist[arcs[a].to] = nd;
        pred[arcs[a].to] = a;
        touched = arcs[a].to;
      }
    }
    if (touched == nodes) return std::nullopt;
  }
  std::size_t v = touched;
  for (std::size_t i = 0; i < nodes; ++i) v = arcs[pred[v]].from;
  std::vector<std::pair<std::size_t, int>> cycle;
  std::size_t u = v;
  do {
    const Arc& a = arcs[pred[u]];
    cycle.push_back({a.cell, a.sign});
    u = a.from;
  } while (u != v);
  return cycle;
}

}  // namespace

TransportResult kantorovich_min(const CostMatrix& costs, const Measure& mu1, const Measure& mu2) {
  require_transport_pair(costs.vertices, mu1, mu2);
  const std::size_t n = costs.size();
  if (costs.cells.size() != n * n) throw Error(ErrorKind::InvalidInput, "cost matrix must be n x n");
  for (const auto& c : costs.cells) {
    if (c && sgn(*c) < 0) throw Error(ErrorKind::InvalidInput, "negative cost");
  }

  // Northwest corner start.
  std::vector<Rational> plan(n * n);
  {
    std::vector<Rational> row = mu1.weights();
    std::vector<Rational> col = mu2.weights();
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < n && y < n) {
      Rational t = row[x] < col[y] ? row[x] : col[y];
      plan[x * n + y] += t;
      row[x] -= t;
      col[y] -= t;
      if (sgn(row[x]) == 0) ++x;
      else ++y;
    }
  }
  bool finite_start = true;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (sgn(plan[i]) > 0 && !costs.cells[i]) finite_start = false;
  }
  if (!finite_start) {
    Network net(2 * n + 2);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (costs(x, y)) cells.push_back({x * n + y, net.add_arc(x, n + y, std::nullopt)});
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (sgn(mu1[v]) > 0) net.add_arc(2 * n, v, mu1[v]);
      if (sgn(mu2[v]) > 0) net.add_arc(n + v, 2 * n + 1, mu2[v]);
    }
    if (net.max_flow(2 * n, 2 * n + 1) != mu1.total()) {
      throw Error(ErrorKind::Infeasible, "no coupling with finite cost exists");
    }
    std::fill(plan.begin(), plan.end(), Rational(0));
    for (auto [cell, arc] : cells) plan[cell] = net.flow(arc);
  }

  while (auto cycle = negative_cycle(costs, plan)) {
    std::optional<Rational> delta;
    for (auto [cell, sign] : *cycle) {
      if (sign < 0 && (!delta || plan[cell] < *delta)) delta = plan[cell];
    }
    if (!delta) throw Error(ErrorKind::Internal, "negative cycle without a backward arc");
    for (auto [cell, sign] : *cycle) plan[cell] += sign > 0 ? *delta : Rational(-*delta);
  }

  Coupling rho(costs.vertices, plan);
  Rational value = rho.expected_cost(costs.cells);
  std::vector<Edge> edges;
  std::vector<Rational> values;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && costs(x, y)) {
        edges.push_back({x, y});
        values.push_back(plan[x * n + y]);
      }
    }
  }
  Flow q(share(Digraph(costs.vertices, std::move(edges))), std::move(values));
  return {std::move(value), std::move(q), std::move(rho)};
}

Rational chain_wasserstein(const std::vector<Vertex>& chain, const std::vector<Rational>& forward,
                           const std::vector<Rational>& backward, const Measure& mu1,
                           const Measure& mu2) {
  require_same_vertices(mu1.vertex_set(), mu2.vertex_set(), "chain_wasserstein");
  if (chain.empty() || forward.size() + 1 != chain.size() || backward.size() + 1 != chain.size()) {
    throw Error(ErrorKind::InvalidInput, "chain of k vertices needs k - 1 weights per direction");
  }
  if (mu1.total() != mu2.total()) {
    throw Error(ErrorKind::InvalidInput, "transport needs equal total masses");
  }
  auto f1 = distribution_function(mu1, chain);
  auto f2 = distribution_function(mu2, chain);
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    Rational gap = f1[i] - f2[i];
    total += forward[i] * positive_part(gap) + backward[i] * positive_part(-gap);
  }
  return total;
}

Rational chain_wasserstein(const std::vector<Vertex>& chain, const std::vector<Rational>& symmetric,
                           const Measure& mu1, const Measure& mu2) {
  return chain_wasserstein(chain, symmetric, symmetric, mu1, mu2);
}

std::optional<Rational> ring_cost_at(const WeightedDigraph& wg, const RingOrientation& ring,
                                     const Rational& alpha) {
  Rational total = 0;
  for (std::size_t i = 0; i < ring.phi_star.size(); ++i) {
    Rational phi = ring.phi_star[i] + alpha;
    if (sgn(phi) > 0) {
      if (!ring.forward[i]) return std::nullopt;
      total += wg.weights[*ring.forward[i]] * phi;
    } else if (sgn(phi) < 0) {
      if (!ring.backward[i]) return std::nullopt;
      total -= wg.weights[*ring.backward[i]] * phi;
    }
  }
  return total;
}

Flow ring_flow_at(const WeightedDigraph& wg, const RingOrientation& ring, const Rational& alpha) {
  std::vector<Rational> values(wg.digraph().edge_count());
  for (std::size_t i = 0; i < ring.phi_star.size(); ++i) {
    Rational phi = ring.phi_star[i] + alpha;
    if (sgn(phi) > 0) {
      if (!ring.forward[i]) throw Error(ErrorKind::UnrepresentableField, "alpha needs a missing edge");
      values[*ring.forward[i]] = phi;
    } else if (sgn(phi) < 0) {
      if (!ring.backward[i]) throw Error(ErrorKind::UnrepresentableField, "alpha needs a missing edge");
      values[*ring.backward[i]] = -phi;
    }
  }
  return Flow(wg.graph, std::move(values));
}

RingSolution ring_optimal(const WeightedDigraph& wg, const Measure& mu1, const Measure& mu2) {
  require_transport_pair(wg.vertex_set(), mu1, mu2);
  RingSolution sol{ring_orientation(wg.digraph(), difference(mu1, mu2)), std::nullopt,
                   std::nullopt, 0, {0, Flow::zero(wg.graph), Coupling(wg.vertex_set())}};
  const auto& ring = sol.ring;
  const std::size_t k = ring.phi_star.size();

  // Feasible alphas: s_i + alpha >= 0 where only the forward edge exists,
  // <= 0 where only the backward edge exists.
  std::optional<Rational> feasible_low;
  std::optional<Rational> feasible_high;
  for (std::size_t i = 0; i < k; ++i) {
    Rational b = -ring.phi_star[i];
    if (!ring.backward[i] && (!feasible_low || b > *feasible_low)) feasible_low = b;
    if (!ring.forward[i] && (!feasible_high || b < *feasible_high)) feasible_high = b;
  }
  if (feasible_low && feasible_high && *feasible_low > *feasible_high) {
    throw Error(ErrorKind::Infeasible, "no flow on the ring has the required divergence");
  }

  // One-sided slopes of the cost with missing directions weighted 0.
  auto wf = [&](std::size_t i) { return ring.forward[i] ? wg.weights[*ring.forward[i]] : Rational(0); };
  auto wb = [&](std::size_t i) { return ring.backward[i] ? wg.weights[*ring.backward[i]] : Rational(0); };
  auto right_slope = [&](const Rational& a) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += sgn(ring.phi_star[i] + a) >= 0 ? wf(i) : Rational(-wb(i));
    return s;
  };
  auto left_slope = [&](const Rational& a) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i) s += sgn(ring.phi_star[i] + a) > 0 ? wf(i) : Rational(-wb(i));
    return s;
  };
  std::vector<Rational> breaks;
  for (const auto& s : ring.phi_star) breaks.push_back(-s);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Rational sum_wf = 0;
  Rational sum_wb = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sum_wf += wf(i);
    sum_wb += wb(i);
  }
  std::optional<Rational> low;
  std::optional<Rational> high;
  if (sgn(sum_wb) != 0) {
    for (const auto& p : breaks) {
      if (sgn(right_slope(p)) >= 0) {
        low = p;
        break;
      }
    }
  }
  if (sgn(sum_wf) != 0) {
    for (auto it = breaks.rbegin(); it != breaks.rend(); ++it) {
      if (sgn(left_slope(*it)) <= 0) {
        high = *it;
        break;
      }
    }
  }
  // Intersect with the feasible interval; a convex function attains its
  // constrained minimum at the nearest feasible endpoint otherwise.
  if (feasible_low && high && *high < *feasible_low) {
    low = high = feasible_low;
  } else if (feasible_high && low && *low > *feasible_high) {
    low = high = feasible_high;
  } else {
    if (feasible_low && (!low || *low < *feasible_low)) low = feasible_low;
    if (feasible_high && (!high || *high > *feasible_high)) high = feasible_high;
  }
  sol.alpha_low = low;
  sol.alpha_high = high;
  if (low && high) sol.alpha = (*low + *high) / 2;
  else if (low) sol.alpha = *low;
  else if (high) sol.alpha = *high;

  Flow q = ring_flow_at(wg, ring, sol.alpha);
  Rational value = *ring_cost_at(wg, ring, sol.alpha);
  Coupling rho = coupling_from_flow_decomposition(remove_cycles(q), mu1);
  sol.result = {std::move(value), std::move(q), std::move(rho)};
  return sol;
}

bool subdifferential_optimality_check(const WeightedDigraph& wg, const Flow& flow,
                                      const CycleBasis& basis) {
  const Digraph& g = wg.digraph();
  require_same_vertices(g.vertex_set(), flow.vertex_set(), "subdifferential_optimality_check");
  for (std::size_t id = 0; id < flow.digraph().edge_count(); ++id) {
    const Edge& e = flow.digraph().edge(id);
    if (sgn(flow.value(id)) > 0 && sgn(flow.value(e.to, e.from)) > 0) {
      throw Error(ErrorKind::NotMinimalForm,
                  "flow is positive on both (" + g.name(e.from) + ", " + g.name(e.to) + ") and its reverse",
                  {e.from, e.to});
    }
    if (sgn(flow.value(id)) > 0 && !g.has_edge(e.from, e.to)) {
      throw Error(ErrorKind::InvalidInput, "flow uses an edge missing from the weighted digraph",
                  {e.from, e.to});
    }
  }
  auto weight = [&](Vertex a, Vertex b) -> std::optional<Rational> {
    auto id = g.find_edge(a, b);
    if (!id) return std::nullopt;
    return wg.weights[*id];
  };
  for (const auto& cycle : basis.cycles) {
    bool right_infinite = false;
    bool left_infinite = false;
    Rational right = 0;
    Rational left = 0;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
      Vertex a = cycle[i];
      Vertex b = cycle[i + 1];
      Rational v = flow.value(a, b) - flow.value(b, a);
      auto forward = weight(a, b);
      auto backward = weight(b, a);
      if (sgn(v) >= 0) {
        if (forward) right += *forward;
        else right_infinite = true;
      } else {
        right -= *backward;
      }
      if (sgn(v) > 0) {
        left += *forward;
      } else {
        if (backward) left -= *backward;
        else left_infinite = true;
      }
    }
    bool right_ok = right_infinite || sgn(right) >= 0;
    bool left_ok = left_infinite || sgn(left) <= 0;
    if (!right_ok || !left_ok) return false;
  }
  return true;
}

LatticeProbeReport lattice_all_flows_optimal(std::size_t dimension, const Measure& mu1,
                                             const Measure& mu2, std::size_t probe_count,
                                             std::uint64_t seed) {
  if (dimension > 4) throw Error(ErrorKind::TooLarge, "lattice probes limited to N <= 4");
  Lattice lattice = boolean_lattice(dimension);
  require_same_vertices(lattice.vertex_set(), mu1.vertex_set(), "lattice_all_flows_optimal");
  require_same_vertices(lattice.vertex_set(), mu2.vertex_set(), "lattice_all_flows_optimal");
  auto hasse = share(hasse_digraph(lattice.order()));
  auto verdict = dominates_via_flow(mu1, mu2, hasse);
  if (!verdict.dominates) {
    throw Error(ErrorKind::NotDominated, "mu1 is not dominated by mu2", *verdict.up_set());
  }
  WeightedDigraph unit(hasse, std::vector<Rational>(hasse->edge_count(), Rational(1)));
  LatticeProbeReport report;
  report.optimal_value = beckmann_min(unit, mu1, mu2).optimal_value;
  const auto target = difference(mu1, mu2);

  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  const std::size_t n = hasse->vertex_count();
  report.all_optimal = true;
  for (std::size_t probe = 0; probe < probe_count; ++probe) {
    // Convex combination of min-cost flows under random positive weights.
    std::size_t parts = static_cast<std::size_t>(uniform(1, 3));
    std::vector<Rational> coeff(parts);
    Rational coeff_sum = 0;
    for (auto& c : coeff) {
      c = Rational(static_cast<unsigned long>(uniform(1, 9)));
      coeff_sum += c;
    }
    std::vector<Rational> values(hasse->edge_count());
    for (std::size_t p = 0; p < parts; ++p) {
      std::vector<Rational> w(hasse->edge_count());
      for (auto& x : w) x = Rational(static_cast<unsigned long>(uniform(1, 20)));
      Flow part = min_cost_flow(WeightedDigraph(hasse, std::move(w)), mu1, mu2);
      for (std::size_t id = 0; id < values.size(); ++id) values[id] += coeff[p] / coeff_sum * part.value(id);
    }
    Flow q(hasse, std::move(values));
    // Reroute mass between the two monotone sides of random squares.
    for (std::size_t step = 0; step < 2 * dimension && dimension >= 2; ++step) {
      Vertex eta = static_cast<Vertex>(uniform(0, n - 1));
      std::size_t i = static_cast<std::size_t>(uniform(0, dimension - 1));
      std::size_t j = static_cast<std::size_t>(uniform(0, dimension - 1));
      if (i == j || ((eta >> i) & 1) || ((eta >> j) & 1)) continue;
      Vertex via_i = eta | (Vertex{1} << i);
      Vertex via_j = eta | (Vertex{1} << j);
      Vertex top = via_i | via_j;
      std::size_t a1 = *hasse->find_edge(eta, via_i);
      std::size_t a2 = *hasse->find_edge(via_i, top);
      std::size_t b1 = *hasse->find_edge(eta, via_j);
      std::size_t b2 = *hasse->find_edge(via_j, top);
      Rational room = std::min(q.value(a1), q.value(a2));
      if (sgn(room) == 0) continue;
      Rational t = room * Rational(static_cast<unsigned long>(uniform(1, 4))) / 4;
      q.add(a1, -t);
      q.add(a2, -t);
      q.add(b1, t);
      q.add(b2, t);
    }
    if (divergence(q) != target) throw Error(ErrorKind::Internal, "probe flow has the wrong divergence");
    report.probe_costs.push_back(q.total());
    if (q.total() != report.optimal_value) report.all_optimal = false;
  }
  return report;
}

}  // namespace flowcouple
