#include "flowcouple/infinite.hpp"

#include <algorithm>
#include <deque>

#include "flowcouple/decomposition.hpp"
#include "flowcouple/error.hpp"

namespace flowcouple {

namespace {

Rational power(const Rational& base, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= base;
  return r;
}

Rational lookup(const auto& map, const auto& key) {
  auto it = map.find(key);
  return it == map.end() ? Rational(0) : it->second;
}

void require_nonnegative(const auto& map, const char* what) {
  for (const auto& [k, v] : map) {
    if (sgn(v) < 0) throw Error(ErrorKind::InvalidInput, std::string(what) + " has a negative mass");
  }
}

void require_ratio(const Rational& r) {
  if (sgn(r) <= 0 || r >= 1) throw Error(ErrorKind::InvalidInput, "geometric ratio must lie in (0, 1)");
}

std::size_t tree_depth(std::size_t i) {
  std::size_t d = 0;
  for (std::size_t v = i + 1; v > 1; v >>= 1) ++d;
  return d;
}

bool in_subtree(std::size_t u, std::size_t v) {
  while (u > v) u = (u - 1) / 2;
  return u == v;
}

}  // namespace

long z_chain_value(std::size_t index) {
  if (index == 0) return 0;
  long k = static_cast<long>((index + 1) / 2);
  return index % 2 == 1 ? -k : k;
}

std::size_t z_chain_index(long z) {
  if (z == 0) return 0;
  return z < 0 ? static_cast<std::size_t>(-2 * z - 1) : static_cast<std::size_t>(2 * z);
}

LazyInstance z_chain_instance(const ZChainParams& params) {
  using Kind = ZChainParams::Kind;
  switch (params.kind) {
    case Kind::FinitelySupported:
      require_nonnegative(params.mu1, "mu1");
      require_nonnegative(params.mu2, "mu2");
      break;
    case Kind::Geometric:
      require_ratio(params.r1);
      require_ratio(params.r2);
      break;
    case Kind::Drift:
      if (sgn(params.drift) < 0) throw Error(ErrorKind::InvalidInput, "drift must be nonnegative");
      break;
  }
  auto p = std::make_shared<const ZChainParams>(params);

  auto cdf_geometric = [](const Rational& r, long x) {
    if (x < 0) return Rational(power(r, static_cast<std::size_t>(-x)) / (1 + r));
    return Rational(1 - power(r, static_cast<std::size_t>(x + 1)) / (1 + r));
  };
  // Signed Q(z, z + 1).
  auto signed_flow = [p, cdf_geometric](long z) -> Rational {
    switch (p->kind) {
      case Kind::FinitelySupported: {
        Rational s = 0;
        for (const auto& [w, m] : p->mu1) if (w <= z) s += m;
        for (const auto& [w, m] : p->mu2) if (w <= z) s -= m;
        return s;
      }
      case Kind::Geometric:
        return cdf_geometric(p->r1, z) - cdf_geometric(p->r2, z);
      case Kind::Drift:
        return p->drift;
    }
    return 0;
  };
  auto mass = [p](bool first, long z) -> Rational {
    switch (p->kind) {
      case Kind::FinitelySupported:
        return lookup(first ? p->mu1 : p->mu2, z);
      case Kind::Geometric: {
        const Rational& r = first ? p->r1 : p->r2;
        return (1 - r) / (1 + r) * power(r, static_cast<std::size_t>(z < 0 ? -z : z));
      }
      case Kind::Drift:
        return 0;
    }
    return 0;
  };

  LazyInstance li;
  li.name = "z-chain";
  li.tree_shadow = true;
  li.vertex_name = [](std::size_t i) { return std::to_string(z_chain_value(i)); };
  li.out_edges = [signed_flow](std::size_t i) -> std::optional<std::vector<LazyEdge>> {
    long z = z_chain_value(i);
    return std::vector<LazyEdge>{
        {i, z_chain_index(z + 1), positive_part(signed_flow(z))},
        {i, z_chain_index(z - 1), positive_part(-signed_flow(z - 1))},
    };
  };
  li.in_edges = [signed_flow](std::size_t i) -> std::optional<std::vector<LazyEdge>> {
    long z = z_chain_value(i);
    return std::vector<LazyEdge>{
        {z_chain_index(z - 1), i, positive_part(signed_flow(z - 1))},
        {z_chain_index(z + 1), i, positive_part(-signed_flow(z))},
    };
  };
  li.mu1 = [mass](std::size_t i) { return mass(true, z_chain_value(i)); };
  li.mu2 = [mass](std::size_t i) { return mass(false, z_chain_value(i)); };
  li.prefix_size = [](std::size_t n) { return 2 * n + 1; };
  li.tail_mass = [p](std::size_t n) -> std::optional<Rational> {
    switch (p->kind) {
      case Kind::FinitelySupported: {
        Rational s = 0;
        for (const auto& m : {&p->mu1, &p->mu2}) {
          for (const auto& [z, w] : *m) {
            if (static_cast<std::size_t>(z < 0 ? -z : z) > n) s += w;
          }
        }
        return s;
      }
      case Kind::Geometric: {
        Rational s = 0;
        for (const Rational* r : {&p->r1, &p->r2}) {
          s += 2 * ((1 - *r) / (1 + *r)) * power(*r, n + 1) / (1 - *r);
        }
        return s;
      }
      case Kind::Drift:
        return Rational(0);
    }
    return std::nullopt;
  };
  return li;
}

std::size_t binary_tree_index(const std::string& name) {
  if (name.empty() || name.front() != 'r') {
    throw Error(ErrorKind::InvalidInput, "binary tree vertex names look like \"r\", \"r01\"");
  }
  std::size_t i = 0;
  for (std::size_t k = 1; k < name.size(); ++k) {
    if (name[k] != '0' && name[k] != '1') {
      throw Error(ErrorKind::InvalidInput, "bad binary tree vertex \"" + name + "\"");
    }
    if (k > 40) throw Error(ErrorKind::TooLarge, "binary tree vertex too deep");
    i = 2 * i + (name[k] == '0' ? 1 : 2);
  }
  return i;
}

LazyInstance binary_tree_instance(const BinaryTreeParams& params) {
  using Kind = BinaryTreeParams::Kind;
  if (params.kind == Kind::Geometric) require_ratio(params.r);
  require_nonnegative(params.mu1, "mu1");
  require_nonnegative(params.mu2, "mu2");
  auto p = std::make_shared<const BinaryTreeParams>(params);

  // Signed Q(parent(v), v) = mu2(subtree v) - mu1(subtree v).
  auto into = [p](std::size_t v) -> Rational {
    if (p->kind == Kind::Geometric) {
      return v == 0 ? Rational(0) : power(p->r / 2, tree_depth(v));
    }
    Rational s = 0;
    for (const auto& [u, m] : p->mu2) if (in_subtree(u, v)) s += m;
    for (const auto& [u, m] : p->mu1) if (in_subtree(u, v)) s -= m;
    return s;
  };
  auto mass = [p](bool first, std::size_t v) -> Rational {
    if (p->kind == Kind::Geometric) {
      if (first) return v == 0 ? Rational(1) : Rational(0);
      std::size_t d = tree_depth(v);
      return (1 - p->r) * power(p->r / 2, d);
    }
    return lookup(first ? p->mu1 : p->mu2, v);
  };

  LazyInstance li;
  li.name = "binary-tree";
  li.tree_shadow = true;
  li.vertex_name = [](std::size_t i) {
    std::string bits;
    for (std::size_t v = i; v > 0; v = (v - 1) / 2) bits += (v % 2 == 1) ? '0' : '1';
    std::reverse(bits.begin(), bits.end());
    return "r" + bits;
  };
  li.out_edges = [into](std::size_t i) -> std::optional<std::vector<LazyEdge>> {
    std::vector<LazyEdge> edges{
        {i, 2 * i + 1, positive_part(into(2 * i + 1))},
        {i, 2 * i + 2, positive_part(into(2 * i + 2))},
    };
    if (i > 0) edges.push_back({i, (i - 1) / 2, positive_part(-into(i))});
    return edges;
  };
  li.in_edges = [into](std::size_t i) -> std::optional<std::vector<LazyEdge>> {
    std::vector<LazyEdge> edges;
    if (i > 0) edges.push_back({(i - 1) / 2, i, positive_part(into(i))});
    edges.push_back({2 * i + 1, i, positive_part(-into(2 * i + 1))});
    edges.push_back({2 * i + 2, i, positive_part(-into(2 * i + 2))});
    return edges;
  };
  li.mu1 = [mass](std::size_t i) { return mass(true, i); };
  li.mu2 = [mass](std::size_t i) { return mass(false, i); };
  li.prefix_size = [](std::size_t n) {
    if (n > 40) throw Error(ErrorKind::TooLarge, "binary tree level too deep");
    return (std::size_t{1} << (n + 1)) - 1;
  };
  li.tail_mass = [p](std::size_t n) -> std::optional<Rational> {
    if (p->kind == Kind::Geometric) return power(p->r, n + 1);
    Rational s = 0;
    for (const auto& m : {&p->mu1, &p->mu2}) {
      for (const auto& [u, w] : *m) {
        if (tree_depth(u) > n) s += w;
      }
    }
    return s;
  };
  return li;
}

namespace {

std::vector<LazyEdge> edges_or_throw(const std::optional<std::vector<LazyEdge>>& edges,
                                     const LazyInstance& li, std::size_t v) {
  if (!edges) {
    throw Error(ErrorKind::UnsummableBoundary,
                "edge list of \"" + li.vertex_name(v) + "\" is not finite", {v});
  }
  return *edges;
}

}  // namespace

TruncatedInstance ghost_truncate(const LazyInstance& li, std::size_t n, GhostMode mode,
                                 const std::optional<DecompositionPrefix>& prefix) {
  const std::size_t m = li.prefix_size(n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back(li.vertex_name(i));
  const Vertex ghost_out_vertex = m;  // receives flow leaving V_n
  const Vertex ghost_in_vertex = mode == GhostMode::Single ? m : m + 1;  // emits flow entering V_n
  if (mode == GhostMode::Single) {
    names.push_back("g");
  } else {
    names.push_back("g+");
    names.push_back("g-");
  }
  auto vs = make_vertex_set(std::move(names));

  std::vector<Edge> edges;
  std::vector<Rational> values;
  std::vector<Rational> out_boundary(m);
  std::vector<Rational> in_boundary(m);
  for (std::size_t x = 0; x < m; ++x) {
    for (const auto& e : edges_or_throw(li.out_edges(x), li, x)) {
      if (sgn(e.flow) < 0) throw Error(ErrorKind::InvalidInput, "negative lazy flow value");
      if (e.to < m) {
        edges.push_back({x, e.to});
        values.push_back(e.flow);
      } else {
        out_boundary[x] += e.flow;
      }
    }
    for (const auto& e : edges_or_throw(li.in_edges(x), li, x)) {
      if (e.from >= m) in_boundary[x] += e.flow;
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (sgn(out_boundary[x]) > 0) {
      edges.push_back({x, ghost_out_vertex});
      values.push_back(out_boundary[x]);
    }
    if (sgn(in_boundary[x]) > 0) {
      edges.push_back({ghost_in_vertex, x});
      values.push_back(in_boundary[x]);
    }
  }
  auto graph = share(Digraph(vs, std::move(edges)));
  Flow raw(graph, std::move(values));

  TruncatedInstance t{n,
                      m,
                      mode,
                      raw,
                      Measure::zero(vs),
                      Measure::zero(vs),
                      SignedMeasure::zero(vs),
                      0,
                      0,
                      std::nullopt,
                      false,
                      false};
  if (mode == GhostMode::Single) {
    if (prefix) {
      Flow head = Flow::zero(graph);
      for (const auto& [path, w] : prefix->paths) {
        for (std::size_t v : path) {
          if (v >= m) throw Error(ErrorKind::InvalidInput, "decomposition prefix leaves V_n");
        }
        for (std::size_t id : path_edges(*graph, DirectedPath{path})) head.add(id, w);
      }
      std::vector<Rational> rest(graph->edge_count());
      for (std::size_t id = 0; id < rest.size(); ++id) {
        rest[id] = raw.value(id) - head.value(id);
        if (sgn(rest[id]) < 0) throw Error(ErrorKind::InvalidInput, "decomposition prefix exceeds the flow");
      }
      Flow tail = remove_cycles(Flow(graph, std::move(rest)));
      for (std::size_t id = 0; id < graph->edge_count(); ++id) head.add(id, tail.value(id));
      t.truncated_flow = remove_cycles(head);
      t.tail_bound = prefix->tail_weight;
    } else {
      t.truncated_flow = remove_cycles(raw);
    }
  }

  const Flow& q = t.truncated_flow;
  std::vector<Rational> w1(vs->size());
  std::vector<Rational> w2(vs->size());
  std::vector<Rational> defect(vs->size());
  for (std::size_t x = 0; x < m; ++x) {
    w1[x] = li.mu1(x);
    w2[x] = li.mu2(x);
  }
  for (std::size_t id = 0; id < graph->edge_count(); ++id) {
    const Edge& e = graph->edge(id);
    if (e.to >= m) {
      t.ghost_in += q.value(id);
      defect[e.from] -= q.value(id);
    }
    if (e.from >= m) {
      t.ghost_out += q.value(id);
      defect[e.to] += q.value(id);
    }
  }
  auto div = divergence(q);
  for (Vertex g = m; g < vs->size(); ++g) {
    w1[g] = positive_part(div[g]);
    w2[g] = positive_part(-div[g]);
  }
  t.mu1 = Measure(vs, std::move(w1));
  t.mu2 = Measure(vs, std::move(w2));
  t.boundary_defect = SignedMeasure(vs, std::move(defect));
  if (t.tail_bound) {
    t.flux_bounds_checked = true;
    t.flux_bounds_hold = t.ghost_in <= *t.tail_bound && t.ghost_out <= *t.tail_bound;
  }
  return t;
}

Coupling truncated_coupling(const LazyInstance& li, std::size_t n) {
  auto t = ghost_truncate(li, n, GhostMode::Split);
  return coupling_from_flow_decomposition(t.truncated_flow, t.mu1);
}

std::vector<FluxLevel> zero_flux_estimate(const LazyInstance& li, std::size_t n_max) {
  std::vector<FluxLevel> levels;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const std::size_t m = li.prefix_size(n);
    FluxLevel level{n, 0, 0};
    Rational mass_gap = 0;
    for (std::size_t x = 0; x < m; ++x) {
      for (const auto& e : edges_or_throw(li.out_edges(x), li, x)) {
        if (e.to >= m) level.outgoing += e.flow;
      }
      for (const auto& e : edges_or_throw(li.in_edges(x), li, x)) {
        if (e.from >= m) level.incoming += e.flow;
      }
      mass_gap += li.mu1(x) - li.mu2(x);
    }
    if (level.outgoing - level.incoming != mass_gap) {
      throw Error(ErrorKind::InconsistentInstance,
                  "at level " + std::to_string(n) + " out - in = " +
                      to_string(level.outgoing - level.incoming) + " but mu1(V_n) - mu2(V_n) = " +
                      to_string(mass_gap));
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

SupTailReport sup_tail_witness(const LazyInstance& li, std::size_t n_max, const Rational& epsilon) {
  SupTailReport report;
  const std::size_t horizon = li.prefix_size(n_max + 1);
  report.witness_at_every_level = n_max > 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::optional<LazyEdge> found;
    for (std::size_t x = li.prefix_size(n); x < horizon && !found; ++x) {
      for (const auto& list : {li.out_edges(x), li.in_edges(x)}) {
        if (!list) continue;
        for (const auto& e : *list) {
          if (e.flow >= epsilon) {
            found = e;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found) report.witness_at_every_level = false;
    report.witnesses.push_back(std::move(found));
  }
  report.summary = report.witness_at_every_level
                       ? "edges with flow >= " + to_string(epsilon) + " touch V \\ V_n at levels 1.." +
                             std::to_string(n_max) + "; evidence against finite decomposability"
                       : "no witness found at some level <= " + std::to_string(n_max);
  return report;
}

Flow ZChainFlow::flow() const {
  std::vector<std::string> names;
  for (long z = low; z <= high; ++z) names.push_back(std::to_string(z));
  auto vs = make_vertex_set(std::move(names));
  std::vector<Edge> edges;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < signed_values.size(); ++i) {
    edges.push_back({i, i + 1});
    values.push_back(positive_part(signed_values[i]));
    edges.push_back({i + 1, i});
    values.push_back(positive_part(-signed_values[i]));
  }
  return Flow(share(Digraph(vs, std::move(edges))), std::move(values));
}

ZChainFlow z_chain_flow(const std::map<long, Rational>& mu1, const std::map<long, Rational>& mu2) {
  require_nonnegative(mu1, "mu1");
  require_nonnegative(mu2, "mu2");
  ZChainFlow out;
  bool any = false;
  for (const auto* m : {&mu1, &mu2}) {
    for (const auto& [z, w] : *m) {
      if (!any) {
        out.low = out.high = z;
        any = true;
      }
      out.low = std::min(out.low, z);
      out.high = std::max(out.high, z);
    }
  }
  Rational running = 0;
  bool nonnegative = true;
  for (long z = out.low; z < out.high; ++z) {
    running += lookup(mu1, z) - lookup(mu2, z);
    if (sgn(running) < 0) nonnegative = false;
    out.signed_values.push_back(running);
  }
  running += lookup(mu1, out.high) - lookup(mu2, out.high);
  out.dominates = nonnegative && sgn(running) == 0;
  return out;
}

TreeFlowEstimate infinite_tree_flow(const LazyInstance& li, const LazyEdge& e, std::size_t depth) {
  if (!li.tree_shadow) throw Error(ErrorKind::NotATree, "instance \"" + li.name + "\" is not a tree");
  const std::size_t m = li.prefix_size(depth);
  if (e.from >= m || e.to >= m) {
    throw Error(ErrorKind::InvalidInput, "edge lies outside V_depth");
  }
  auto out = edges_or_throw(li.out_edges(e.from), li, e.from);
  if (std::none_of(out.begin(), out.end(), [&](const LazyEdge& x) { return x.to == e.to; })) {
    throw Error(ErrorKind::InvalidInput, "not an edge of the instance", {e.from, e.to});
  }
  std::vector<char> seen(m, 0);
  std::deque<std::size_t> queue{e.from};
  seen[e.from] = 1;
  Rational sum = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    sum += li.mu1(v) - li.mu2(v);
    std::vector<std::size_t> next;
    for (const auto& x : edges_or_throw(li.out_edges(v), li, v)) next.push_back(x.to);
    for (const auto& x : edges_or_throw(li.in_edges(v), li, v)) next.push_back(x.from);
    for (std::size_t u : next) {
      bool crossing = (v == e.from && u == e.to) || (v == e.to && u == e.from);
      if (u < m && !seen[u] && !crossing) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return {sum, li.tail_mass ? li.tail_mass(depth) : std::nullopt};
}

}  // namespace flowcouple
