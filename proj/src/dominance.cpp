#include "flowcouple/dominance.hpp"

#include <algorithm>
#include <limits>

#include "flowcouple/error.hpp"
#include "flowcouple/kernels.hpp"
#include "flowcouple/network.hpp"

namespace flowcouple {

namespace {

void require_equal_mass(const Measure& mu1, const Measure& mu2) {
  require_same_vertices(mu1.vertex_set(), mu2.vertex_set(), "dominance");
  if (mu1.total() != mu2.total()) {
    throw Error(ErrorKind::InvalidInput, "dominance needs equal total masses, got " +
                                             to_string(mu1.total()) + " and " +
                                             to_string(mu2.total()));
  }
}

UpSet mask_to_set(std::uint64_t mask) {
  UpSet u;
  for (Vertex v = 0; mask >> v; ++v) {
    if ((mask >> v) & 1) u.push_back(v);
  }
  return u;
}

// delta scaled to a common denominator, when every partial sum fits in int64.
std::optional<std::vector<std::int64_t>> scaled_integers(const SignedMeasure& d) {
  mpz_class lcm = 1;
  for (const auto& w : d.weights()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  std::vector<std::int64_t> out;
  mpz_class abs_total = 0;
  for (const auto& w : d.weights()) {
    mpz_class scaled = w.get_num() * (lcm / w.get_den());
    abs_total += abs(scaled);
    if (!scaled.fits_slong_p()) return std::nullopt;
    out.push_back(scaled.get_si());
  }
  if (!abs_total.fits_slong_p()) return std::nullopt;
  return out;
}

std::optional<std::uint64_t> exact_scan(const std::vector<std::uint64_t>& up, const SignedMeasure& d) {
  const std::uint64_t count = std::uint64_t{1} << up.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    bool closed = true;
    Rational s = 0;
    for (Vertex x = 0; x < up.size() && closed; ++x) {
      if (!((mask >> x) & 1)) continue;
      if (up[x] & ~mask) closed = false;
      s += d[x];
    }
    if (closed && sgn(s) > 0) return mask;
  }
  return std::nullopt;
}

Rational set_mass(const SignedMeasure& d, const UpSet& u) {
  Rational s = 0;
  for (Vertex v : u) s += d[v];
  return s;
}

}  // namespace

DominanceVerdict dominates_oracle(const Measure& mu1, const Measure& mu2,
                                  const PartialOrderRelation& rel) {
  require_equal_mass(mu1, mu2);
  require_same_vertices(mu1.vertex_set(), rel.vertex_set(), "dominates_oracle");
  const std::size_t n = rel.size();
  if (n > kOracleVertexLimit) {
    throw Error(ErrorKind::TooLarge, "up-set enumeration is limited to " +
                                         std::to_string(kOracleVertexLimit) + " vertices");
  }
  std::vector<std::uint64_t> up(n);
  for (Vertex x = 0; x < n; ++x) up[x] = rel.up_mask(x);
  auto d = difference(mu1, mu2);
  std::optional<std::uint64_t> hit;
  if (auto ints = scaled_integers(d)) {
    hit = kernels::first_violating_upset(up, *ints);
  } else {
    hit = exact_scan(up, d);
  }
  if (hit) return {false, mask_to_set(*hit)};
  return {true, std::monostate{}};
}

DominanceVerdict dominates_via_flow(const Measure& mu1, const Measure& mu2, const DigraphPtr& hasse) {
  require_equal_mass(mu1, mu2);
  require_same_vertices(mu1.vertex_set(), hasse->vertex_set(), "dominates_via_flow");
  if (!is_acyclic(*hasse)) {
    throw Error(ErrorKind::CyclicInput, "Hasse digraph has a directed cycle");
  }
  const std::size_t n = hasse->vertex_count();
  const std::size_t s = n;
  const std::size_t t = n + 1;
  Network net(n + 2);
  std::vector<std::size_t> arc(hasse->edge_count());
  for (std::size_t id = 0; id < hasse->edge_count(); ++id) {
    arc[id] = net.add_arc(hasse->edge(id).from, hasse->edge(id).to, std::nullopt);
  }
  auto d = difference(mu1, mu2);
  Rational supply = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (sgn(d[v]) > 0) {
      net.add_arc(s, v, d[v]);
      supply += d[v];
    } else if (sgn(d[v]) < 0) {
      net.add_arc(v, t, Rational(-d[v]));
    }
  }
  Rational pushed = net.max_flow(s, t);
  if (pushed == supply) {
    std::vector<Rational> values(hasse->edge_count());
    for (std::size_t id = 0; id < values.size(); ++id) values[id] = net.flow(arc[id]);
    return {true, Flow(hasse, std::move(values))};
  }
  // The source side of a minimum cut is closed under uncapacitated Hasse arcs,
  // so it is an up-set; its excess mu1 - mu2 is supply - pushed > 0.
  auto side = net.residual_reachable(s);
  UpSet u;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v]) u.push_back(v);
  }
  if (sgn(set_mass(d, u)) <= 0) {
    throw Error(ErrorKind::Internal, "cut does not separate the measures");
  }
  return {false, std::move(u)};
}

Coupling build_compatible_coupling(const Measure& mu1, const Measure& mu2, const DigraphPtr& hasse) {
  auto verdict = dominates_via_flow(mu1, mu2, hasse);
  if (!verdict.dominates) {
    throw Error(ErrorKind::NotDominated, "mu1 is not dominated by mu2", *verdict.up_set());
  }
  Coupling c = coupling_from_flow_decomposition(*verdict.flow(), mu1);
  if (marginals(c).second != mu2) {
    throw Error(ErrorKind::Internal, "coupling second marginal differs from mu2");
  }
  return c;
}

DominanceVerdict chain_condition(const Measure& mu1, const Measure& mu2,
                                 const std::vector<Vertex>& chain_order) {
  require_equal_mass(mu1, mu2);
  auto f1 = distribution_function(mu1, chain_order);
  auto f2 = distribution_function(mu2, chain_order);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < chain_order.size(); ++i) {
    edges.push_back({chain_order[i], chain_order[i + 1]});
  }
  auto chain = share(Digraph(mu1.vertex_set(), std::move(edges)));
  std::vector<Rational> values(chain->edge_count());
  for (std::size_t i = 0; i < chain_order.size(); ++i) {
    Rational gap = f1[i] - f2[i];
    if (sgn(gap) < 0) {
      // Everything above position i is an up-set with excess F2 - F1 > 0.
      return {false, UpSet(chain_order.begin() + static_cast<std::ptrdiff_t>(i) + 1, chain_order.end())};
    }
    if (i < values.size()) values[i] = gap;
  }
  return {true, Flow(chain, std::move(values))};
}

TreeVerdict tree_condition(const Measure& mu1, const Measure& mu2, const DigraphPtr& tree_hasse) {
  require_equal_mass(mu1, mu2);
  require_same_vertices(mu1.vertex_set(), tree_hasse->vertex_set(), "tree_condition");
  const Digraph& g = *tree_hasse;
  const std::size_t n = g.vertex_count();
  if (n == 0 || g.edge_count() != n - 1 || undirected_shadow(g).size() != n - 1 ||
      !shadow_is_connected(g)) {
    throw Error(ErrorKind::NotATree, "undirected shadow is not a tree");
  }
  auto d = difference(mu1, mu2);
  // Root at vertex 0; subtree sums of d.
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    adj[g.edge(id).from].push_back({g.edge(id).to, id});
    adj[g.edge(id).to].push_back({g.edge(id).from, id});
  }
  std::vector<std::size_t> parent_edge(n, g.edge_count());
  std::vector<Vertex> order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto [u, id] : adj[order[i]]) {
      if (seen[u]) continue;
      seen[u] = 1;
      parent_edge[u] = id;
      order.push_back(u);
    }
  }
  std::vector<Rational> subtree(d.weights());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    if (parent_edge[v] == g.edge_count()) continue;
    const Edge& e = g.edge(parent_edge[v]);
    Vertex p = e.from == v ? e.to : e.from;
    subtree[p] += subtree[v];
  }
  std::vector<Rational> signed_values(g.edge_count());
  for (Vertex v = 0; v < n; ++v) {
    if (parent_edge[v] == g.edge_count()) continue;
    const Edge& e = g.edge(parent_edge[v]);
    // Tail side of e is the subtree of v when e points away from v.
    signed_values[parent_edge[v]] = e.from == v ? subtree[v] : Rational(-subtree[v]);
  }
  std::vector<Rational> clipped(g.edge_count());
  bool ok = true;
  for (std::size_t id = 0; id < clipped.size(); ++id) {
    clipped[id] = positive_part(signed_values[id]);
    if (sgn(signed_values[id]) < 0) ok = false;
  }
  Flow forced(tree_hasse, std::move(clipped));
  if (ok) return {{true, forced}, forced, std::move(signed_values)};
  auto fallback = dominates_via_flow(mu1, mu2, tree_hasse);
  if (fallback.dominates) throw Error(ErrorKind::Internal, "tree verdict disagrees with flow solver");
  return {std::move(fallback), forced, std::move(signed_values)};
}

RingOrientation ring_orientation(const Digraph& g, const SignedMeasure& delta,
                                 const std::vector<Vertex>& orientation) {
  const std::size_t n = g.vertex_count();
  auto shadow = undirected_shadow(g);
  if (n < 3 || shadow.size() != n || !shadow_is_connected(g)) {
    throw Error(ErrorKind::NotASingleCycle, "undirected shadow is not a single cycle");
  }
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : shadow) {
    ++degree[e.a];
    ++degree[e.b];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] != 2) {
      throw Error(ErrorKind::NotASingleCycle, "vertex \"" + g.name(v) + "\" has degree " +
                                                  std::to_string(degree[v]) + " in the shadow",
                  {v});
    }
  }
  RingOrientation ring;
  if (orientation.empty()) {
    ring.cycle = fundamental_cycle_basis(g).cycles.at(0);
  } else {
    ring.cycle = orientation;
    if (ring.cycle.size() == n) ring.cycle.push_back(ring.cycle.front());
    std::vector<char> visited(n, 0);
    bool valid = ring.cycle.size() == n + 1 && ring.cycle.front() == ring.cycle.back();
    for (std::size_t i = 0; valid && i < n; ++i) {
      Vertex a = ring.cycle[i];
      Vertex b = ring.cycle[i + 1];
      if (a >= n || b >= n || visited[a] || (!g.has_edge(a, b) && !g.has_edge(b, a))) valid = false;
      else visited[a] = 1;
    }
    if (!valid) throw Error(ErrorKind::NotASingleCycle, "orientation does not traverse the cycle");
  }
  Rational running = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = ring.cycle[i];
    Vertex b = ring.cycle[i + 1];
    ring.forward.push_back(g.find_edge(a, b));
    ring.backward.push_back(g.find_edge(b, a));
    running += delta[a];
    ring.phi_star.push_back(running);
  }
  return ring;
}

SingleCycleVerdict single_cycle_condition(const Measure& mu1, const Measure& mu2,
                                          const DigraphPtr& ring_hasse,
                                          const std::vector<Vertex>& orientation) {
  require_equal_mass(mu1, mu2);
  require_same_vertices(mu1.vertex_set(), ring_hasse->vertex_set(), "single_cycle_condition");
  auto d = difference(mu1, mu2);
  SingleCycleVerdict out{{}, ring_orientation(*ring_hasse, d, orientation), std::nullopt};
  const auto& ring = out.ring;
  // phi^alpha(c_i, c_{i+1}) = s_i + alpha must be >= 0 on edges along the
  // cycle and <= 0 on edges against it.
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  for (std::size_t i = 0; i < ring.phi_star.size(); ++i) {
    Rational bound = -ring.phi_star[i];
    bool along = ring.forward[i].has_value();
    bool against = ring.backward[i].has_value();
    if (along && !against && (!lower || bound > *lower)) lower = bound;
    if (against && !along && (!upper || bound < *upper)) upper = bound;
  }
  if (lower && upper && *lower > *upper) {
    out.verdict = dominates_via_flow(mu1, mu2, ring_hasse);
    if (out.verdict.dominates) throw Error(ErrorKind::Internal, "cycle verdict disagrees with flow solver");
    return out;
  }
  Rational alpha = lower ? *lower : upper ? *upper : Rational(0);
  std::vector<Rational> values(ring_hasse->edge_count());
  for (std::size_t i = 0; i < ring.phi_star.size(); ++i) {
    Rational phi = ring.phi_star[i] + alpha;
    if (sgn(phi) > 0) values[*ring.forward[i]] = phi;
    if (sgn(phi) < 0) values[*ring.backward[i]] = -phi;
  }
  out.alpha = alpha;
  out.verdict = {true, Flow(ring_hasse, std::move(values))};
  return out;
}

bool elementary_lattice_condition(const Measure& mu1, const Measure& mu2) {
  require_equal_mass(mu1, mu2);
  const auto& vs = *mu1.vertex_set();
  if (vs.size() != 4) throw Error(ErrorKind::WrongShape, "elementary lattice needs exactly 4 vertices");
  auto pick = [&](const char* name) {
    auto v = vs.find(name);
    if (!v) throw Error(ErrorKind::WrongShape, std::string("missing vertex ") + name);
    return *v;
  };
  Vertex a = pick("A");
  Vertex b = pick("B");
  Vertex c = pick("C");
  Vertex top = pick("D");
  auto d = difference(mu1, mu2);
  return abs_value(d[c]) + abs_value(d[b]) <= d[a] - d[top];
}

}  // namespace flowcouple
