// Acceptance run: one line per criterion. All comparisons are exact rational
// equalities or inequalities (tolerance 0); seeds are fixed.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "flowcouple/coupling.hpp"
#include "flowcouple/decomposition.hpp"
#include "flowcouple/dominance.hpp"
#include "flowcouple/error.hpp"
#include "flowcouple/infinite.hpp"
#include "flowcouple/lattice.hpp"
#include "flowcouple/random_instances.hpp"
#include "flowcouple/transport.hpp"
#include "support/oracles.hpp"

using namespace flowcouple;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message and a running count.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
  [[nodiscard]] Result result(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checks << " checks";
    if (failures > 0) s << ", " << failures << " failed, first: " << first;
    return {failures == 0, s.str()};
  }
};

std::string str(const Rational& r) { return r.get_str(); }

std::pair<Measure, Measure> random_pair(random::Rng& rng, const PartialOrderRelation& rel) {
  if (random::coin(rng, 0.5)) return random::random_dominated_pair(rng, rel);
  return {random::random_probability(rng, rel.vertex_set()), random::random_probability(rng, rel.vertex_set())};
}

bool divergence_matches(const Flow& q, const Measure& mu1, const Measure& mu2) {
  auto d = oracle::divergence(q);
  for (Vertex v = 0; v < mu1.size(); ++v) {
    if (d[v] != mu1[v] - mu2[v]) return false;
  }
  return true;
}

Result strassen_triad() {
  random::Rng rng(1001);
  Tally t;
  std::size_t yes = 0;
  for (int i = 0; i < 200; ++i) {
    auto rel = random::random_poset(rng, random::uniform_index(rng, 2, 8), 0.35);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto hasse = share(hasse_digraph(rel));
    bool a = dominates_oracle(mu1, mu2, rel).dominates;
    auto fv = dominates_via_flow(mu1, mu2, hasse);
    bool c = true;
    try {
      auto coupling = build_compatible_coupling(mu1, mu2, hasse);
      auto [m1, m2] = oracle::marginals(coupling);
      t.expect(m1 == mu1.weights() && m2 == mu2.weights() && is_compatible(coupling, rel),
               [&] { return "instance " + std::to_string(i) + ": coupling marginals or support wrong"; });
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDominated) throw;
      c = false;
    }
    yes += a;
    t.expect(a == fv.dominates && a == c, [&] {
      return "instance " + std::to_string(i) + ": oracle " + std::to_string(a) + ", flow " +
             std::to_string(fv.dominates) + ", coupling " + std::to_string(c);
    });
    if (fv.dominates && fv.flow()) {
      t.expect(divergence_matches(*fv.flow(), mu1, mu2), [&] { return "instance " + std::to_string(i) + ": flow certificate divergence"; });
    }
  }
  return t.result("200 posets |V|<=8, " + std::to_string(yes) + " dominated");
}

Result constructive_algorithms() {
  random::Rng rng(1002);
  Tally t;
  for (int i = 0; i < 200; ++i) {
    auto q = random::random_acyclic_flow(rng, random::uniform_index(rng, 2, 10), 0.35);
    auto mu1 = random::random_admissible_source(rng, q);
    auto mu2 = target_measure(q, mu1);
    auto tag = [i](const char* what) { return [i, what] { return "flow " + std::to_string(i) + ": " + what; }; };

    auto ledger = coupling_from_flow_ledger_traced(q, mu1);
    auto [l1, l2] = oracle::marginals(ledger.coupling);
    t.expect(l1 == mu1.weights() && l2 == mu2.weights(), tag("ledger marginals"));
    t.expect(flow_from_coupling(ledger.coupling, q.digraph_ptr(), ledger.paths).same_values(q), tag("ledger round trip"));

    auto dec = coupling_from_flow_decomposition(q, mu1);
    auto [d1, d2] = oracle::marginals(dec);
    t.expect(d1 == mu1.weights() && d2 == mu2.weights(), tag("decomposition marginals"));
    Rational tv = 0;
    for (Vertex v = 0; v < mu1.size(); ++v) tv += abs_value(mu1[v] - mu2[v]);
    t.expect(dec.off_diagonal_mass() == tv / 2, tag("off-diagonal mass != half total variation"));
  }
  return t.result("200 acyclic flows |V|<=10, exact marginals");
}

Result decomposition_bounds() {
  random::Rng rng(1003);
  Tally t;
  for (int i = 0; i < 200; ++i) {
    auto q = random::random_acyclic_flow(rng, random::uniform_index(rng, 2, 10), 0.35);
    auto pm = path_decompose(q);
    auto d = oracle::divergence(q);
    Rational half = 0;
    for (const auto& x : d) half += abs_value(x);
    half /= 2;
    t.expect(pm.total_weight() == half, [&] { return "flow " + std::to_string(i) + ": total weight " + str(pm.total_weight()) + " != " + str(half); });
    t.expect(flow_from_decomposition(pm, q.digraph_ptr()).same_values(q), [&] { return "flow " + std::to_string(i) + ": round trip"; });
    std::size_t n = q.vertex_set()->size();
    for (int s = 0; s < 200; ++s) {
      std::vector<char> in(n);
      for (auto& b : in) b = random::coin(rng, 0.5);
      Rational inside = 0;
      for (const auto& e : pm.entries()) {
        bool all = std::all_of(e.path.vertices.begin(), e.path.vertices.end(), [&](Vertex v) { return in[v] != 0; });
        if (all) inside += e.weight;
      }
      Rational src = 0;
      Rational snk = 0;
      for (Vertex v = 0; v < n; ++v) {
        if (!in[v]) continue;
        if (sgn(d[v]) > 0) src += d[v];
        if (sgn(d[v]) < 0) snk -= d[v];
      }
      t.expect(inside <= std::min(src, snk), [&] { return "flow " + std::to_string(i) + ": subset bound " + str(inside) + " > min(" + str(src) + ", " + str(snk) + ")"; });
    }
  }
  return t.result("200 flows x 200 subsets");
}

Result stabilization_drift() {
  random::Rng rng(1004);
  Tally t;
  Rational worst = 0;
  for (int i = 0; i < 200; ++i) {
    auto q = random::random_acyclic_flow(rng, random::uniform_index(rng, 2, 9), 0.4);
    std::vector<PathEntry> edgewise;
    for (std::size_t id = 0; id < q.digraph().edge_count(); ++id) {
      if (sgn(q.value(id)) > 0) {
        const auto& e = q.digraph().edge(id);
        edgewise.push_back({DirectedPath{{e.from, e.to}}, q.value(id)});
      }
    }
    for (const auto& pm : {PathMeasure(q.vertex_set(), edgewise), path_decompose(q)}) {
      auto trace = stabilize_decomposition_traced(pm);
      t.expect(trace.result.is_stable(), [&] { return "flow " + std::to_string(i) + ": result not stable"; });
      for (std::size_t k = 0; k < trace.drift.size(); ++k) {
        if (sgn(trace.inserted_weight[k]) > 0) worst = std::max(worst, Rational(trace.drift[k] / trace.inserted_weight[k]));
        t.expect(trace.drift[k] <= 6 * trace.inserted_weight[k], [&] {
          std::ostringstream s;
          s << "flow " << i << " step " << k << ": drift " << str(trace.drift[k]) << " > 6 * " << str(trace.inserted_weight[k])
            << " (" << pm.size() << " input paths)";
          return s.str();
        });
      }
    }
  }
  return t.result("400 decompositions, max drift ratio " + str(worst));
}

Result transport_equivalence() {
  random::Rng rng(1005);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    auto wg = random::random_connected_weighted(rng, random::uniform_index(rng, 2, 8), 0.25);
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto costs = geodesic_cost_matrix(wg);
    auto b = beckmann_min(wg, mu1, mu2);
    auto k = kantorovich_min(costs, mu1, mu2);
    t.expect(b.optimal_value == k.optimal_value, [&] { return "graph " + std::to_string(i) + ": " + str(b.optimal_value) + " vs " + str(k.optimal_value); });
    Rational expected = 0;
    for (auto [x, y] : b.optimal_coupling.support()) expected += b.optimal_coupling(x, y) * *costs(x, y);
    t.expect(expected == b.optimal_value, [&] { return "graph " + std::to_string(i) + ": coupling cost " + str(expected); });
    auto [m1, m2] = oracle::marginals(b.optimal_coupling);
    t.expect(m1 == mu1.weights() && m2 == mu2.weights(), [&] { return "graph " + std::to_string(i) + ": coupling marginals"; });
  }
  return t.result("100 strongly connected digraphs |V|<=8");
}

Result closed_forms() {
  random::Rng rng(1006);
  Tally t;
  for (int i = 0; i < 100; ++i) {
    std::size_t n = random::uniform_index(rng, 2, 8);
    auto vs = random::numbered_vertices(n);
    std::vector<Vertex> chain(n);
    for (Vertex v = 0; v < n; ++v) chain[v] = v;
    std::shuffle(chain.begin(), chain.end(), rng);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(chain[a], chain[b]);
    }
    PartialOrderRelation rel(vs, pairs);
    auto [mu1, mu2] = random_pair(rng, rel);
    t.expect(chain_condition(mu1, mu2, chain).dominates == oracle::dominates(mu1, mu2, rel), [&] { return "chain " + std::to_string(i); });
  }
  for (int i = 0; i < 100; ++i) {
    auto g = share(random::random_tree_hasse(rng, random::uniform_index(rng, 2, 8)));
    auto rel = PartialOrderRelation::from_digraph(*g);
    auto [mu1, mu2] = random_pair(rng, rel);
    auto tv = tree_condition(mu1, mu2, g);
    auto fv = dominates_via_flow(mu1, mu2, g);
    t.expect(tv.verdict.dominates == oracle::dominates(mu1, mu2, rel), [&] { return "tree " + std::to_string(i); });
    if (tv.verdict.dominates && fv.dominates) {
      t.expect(tv.verdict.flow() && tv.verdict.flow()->same_values(*fv.flow()), [&] { return "tree " + std::to_string(i) + ": certificates differ"; });
    }
  }
  auto diamond = share(Digraph::from_names({"A", "B", "C", "D"}, {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}}));
  auto diamond_rel = PartialOrderRelation::from_digraph(*diamond);
  for (int i = 0; i < 100; ++i) {
    auto [mu1, mu2] = random_pair(rng, diamond_rel);
    bool o = oracle::dominates(mu1, mu2, diamond_rel);
    t.expect(elementary_lattice_condition(mu1, mu2) == o, [&] { return "diamond " + std::to_string(i) + ": elementary"; });
    t.expect(single_cycle_condition(mu1, mu2, diamond).verdict.dominates == o, [&] { return "diamond " + std::to_string(i) + ": cycle"; });
    auto g = share(random::random_ring_hasse(rng, random::uniform_index(rng, 4, 8)));
    auto rel = PartialOrderRelation::from_digraph(*g);
    auto [r1, r2] = random_pair(rng, rel);
    t.expect(single_cycle_condition(r1, r2, g).verdict.dominates == oracle::dominates(r1, r2, rel), [&] { return "ring " + std::to_string(i); });
  }
  for (int i = 0; i < 100; ++i) {
    bool symmetric = i % 2 == 0;
    auto wc = random::random_weighted_chain(rng, random::uniform_index(rng, 2, 8), symmetric);
    auto mu1 = random::random_probability(rng, wc.graph.vertex_set());
    auto mu2 = random::random_probability(rng, wc.graph.vertex_set());
    Rational w = symmetric ? chain_wasserstein(wc.chain, wc.forward, mu1, mu2)
                           : chain_wasserstein(wc.chain, wc.forward, wc.backward, mu1, mu2);
    Rational b = beckmann_min(wc.graph, mu1, mu2).optimal_value;
    t.expect(w == b, [&] { return "weighted chain " + std::to_string(i) + ": " + str(w) + " vs " + str(b); });
  }
  return t.result("chains, trees, diamonds, rings and weighted chains, 100 each");
}

std::vector<std::optional<Rational>> ring_weights(const WeightedDigraph& wg, const std::vector<std::optional<std::size_t>>& ids) {
  std::vector<std::optional<Rational>> out;
  for (const auto& id : ids) out.push_back(id ? std::optional<Rational>(wg.weights[*id]) : std::nullopt);
  return out;
}

Result ring_optimality() {
  random::Rng rng(1007);
  Tally t;
  const Rational eps(1, 64);
  for (int i = 0; i < 50; ++i) {
    auto wg = random::random_weighted_ring(rng, random::uniform_index(rng, 3, 10), i % 2 == 0 ? 0.0 : 0.3);
    auto mu1 = random::random_probability(rng, wg.vertex_set());
    auto mu2 = random::random_probability(rng, wg.vertex_set());
    auto sol = ring_optimal(wg, mu1, mu2);
    Rational best = beckmann_min(wg, mu1, mu2).optimal_value;
    auto fw = ring_weights(wg, sol.ring.forward);
    auto bw = ring_weights(wg, sol.ring.backward);
    auto basis = fundamental_cycle_basis(wg.digraph());
    auto tag = [i](const std::string& w) { return [i, w] { return "ring " + std::to_string(i) + ": " + w; }; };
    std::vector<Rational> inside{sol.alpha};
    if (sol.alpha_low) inside.push_back(*sol.alpha_low);
    if (sol.alpha_high) inside.push_back(*sol.alpha_high);
    if (sol.alpha_low && sol.alpha_high) inside.push_back((*sol.alpha_low * 3 + *sol.alpha_high) / 4);
    for (const auto& a : inside) {
      auto c = oracle::ring_cost(sol.ring.phi_star, a, fw, bw);
      t.expect(c && *c == best, tag("alpha " + str(a) + " in the interval is not optimal"));
      t.expect(subdifferential_optimality_check(wg, ring_flow_at(wg, sol.ring, a), basis), tag("check rejects alpha " + str(a)));
    }
    for (const auto& side : {sol.alpha_low ? std::optional<Rational>(*sol.alpha_low - eps) : std::nullopt,
                             sol.alpha_high ? std::optional<Rational>(*sol.alpha_high + eps) : std::nullopt}) {
      if (!side) continue;
      auto c = oracle::ring_cost(sol.ring.phi_star, *side, fw, bw);
      t.expect(!c || *c > best, tag("alpha " + str(*side) + " outside is still optimal"));
      if (c) {
        t.expect(!subdifferential_optimality_check(wg, ring_flow_at(wg, sol.ring, *side), basis), tag("check accepts alpha " + str(*side)));
      }
    }
  }
  return t.result("50 rings n<=10, outside probes at distance 1/64");
}

Result lattice_universality() {
  random::Rng rng(1008);
  Tally t;
  for (std::size_t dim : {2u, 3u}) {
    auto lat = boolean_lattice(dim);
    auto rel = lat.order();
    for (int i = 0; i < 20; ++i) {
      auto [mu1, mu2] = random::random_dominated_pair(rng, rel);
      auto r = lattice_all_flows_optimal(dim, mu1, mu2, 30, 5000 + 100 * dim + i);
      Rational gap = oracle::hamming_gap(mu1, mu2);
      t.expect(r.all_optimal && r.probe_costs.size() == 30, [&] { return "N=" + std::to_string(dim) + " pair " + std::to_string(i) + ": probe not optimal"; });
      t.expect(r.optimal_value == gap, [&] { return "N=" + std::to_string(dim) + " pair " + std::to_string(i) + ": " + str(r.optimal_value) + " != " + str(gap); });
      for (const auto& c : r.probe_costs) t.expect(c == gap, [&] { return "probe cost " + str(c) + " != " + str(gap); });
    }
  }
  return t.result("N in {2,3}, 20 pairs x 30 probes");
}

// Boundary-flux identity recomputed from the generators.
void check_flux_identity(Tally& t, const std::string& name, const LazyInstance& li, std::size_t n_max) {
  auto levels = zero_flux_estimate(li, n_max);
  for (const auto& l : levels) {
    std::size_t size = li.prefix_size(l.level);
    Rational out = 0;
    Rational in = 0;
    Rational mass = 0;
    for (std::size_t x = 0; x < size; ++x) {
      const auto outs = li.out_edges(x);
      const auto ins = li.in_edges(x);
      for (const auto& e : *outs) {
        if (e.to >= size) out += e.flow;
      }
      for (const auto& e : *ins) {
        if (e.from >= size) in += e.flow;
      }
      mass += li.mu1(x) - li.mu2(x);
    }
    t.expect(out == l.outgoing && in == l.incoming && out - in == mass,
             [&] { return name + " level " + std::to_string(l.level) + ": out " + str(out) + ", in " + str(in) + ", mass " + str(mass); });
  }
}

std::map<std::pair<std::string, std::string>, Rational> by_name(const Coupling& c) {
  std::map<std::pair<std::string, std::string>, Rational> out;
  const auto& vs = *c.vertex_set();
  for (auto [x, y] : c.support()) out[{vs.name(x), vs.name(y)}] = c(x, y);
  return out;
}

// Signed flow on z -> z + 1 obtained by routing each coupled pair along the chain.
std::map<long, Rational> induced_chain_flow(const std::map<std::pair<std::string, std::string>, Rational>& c) {
  std::map<long, Rational> out;
  for (const auto& [xy, m] : c) {
    long x = std::stol(xy.first);
    long y = std::stol(xy.second);
    for (long z = std::min(x, y); z < std::max(x, y); ++z) out[z] += x < y ? m : Rational(-m);
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

Result truncation_soundness() {
  random::Rng rng(1009);
  Tally t;
  {
    ZChainParams p;
    p.kind = ZChainParams::Kind::Drift;
    p.drift = 1;
    check_flux_identity(t, "z-chain drift", z_chain_instance(p), 12);
    p.kind = ZChainParams::Kind::Geometric;
    p.r1 = Rational(1, 2);
    p.r2 = Rational(2, 3);
    check_flux_identity(t, "z-chain geometric", z_chain_instance(p), 12);
    BinaryTreeParams b;
    b.kind = BinaryTreeParams::Kind::Geometric;
    b.r = Rational(3, 5);
    check_flux_identity(t, "binary tree geometric", binary_tree_instance(b), 8);
  }
  for (int i = 0; i < 40; ++i) {
    std::map<long, Rational> m[2];
    long radius = static_cast<long>(random::uniform_index(rng, 1, 4));
    for (auto& mu : m) {
      Rational total = 0;
      for (long z = -radius; z <= radius; ++z) {
        if (random::coin(rng, 0.5)) total += mu[z] = random::small_rational(rng, 1, 4, 4);
      }
      if (sgn(total) == 0) total = mu[0] = 1;
      for (auto& [z, w] : mu) w /= total;
    }
    ZChainParams p;
    p.mu1 = m[0];
    p.mu2 = m[1];
    auto li = z_chain_instance(p);
    check_flux_identity(t, "z-chain finite " + std::to_string(i), li, 7);

    // Chain certificate on the window, checked against the closed form.
    auto zf = z_chain_flow(m[0], m[1]);
    auto q = zf.flow();
    const auto& vs = q.vertex_set();
    std::vector<Rational> w1(vs->size());
    std::vector<Rational> w2(vs->size());
    for (auto& [z, w] : m[0]) w1[static_cast<std::size_t>(z - zf.low)] = w;
    for (auto& [z, w] : m[1]) w2[static_cast<std::size_t>(z - zf.low)] = w;
    std::vector<Vertex> chain;
    for (Vertex v = 0; v < vs->size(); ++v) chain.push_back(v);
    auto cc = chain_condition(Measure(vs, w1), Measure(vs, w2), chain);
    if (cc.dominates) {
      t.expect(cc.flow()->same_values(q), [&] { return "z-chain finite " + std::to_string(i) + ": window flow differs from chain certificate"; });
    }
    std::map<long, Rational> certificate;
    for (std::size_t k = 0; k < zf.signed_values.size(); ++k) {
      if (sgn(zf.signed_values[k]) != 0) certificate[zf.low + static_cast<long>(k)] = zf.signed_values[k];
    }
    std::size_t cover = static_cast<std::size_t>(std::max(std::abs(zf.low), std::abs(zf.high)));
    auto first = by_name(truncated_coupling(li, cover));
    t.expect(induced_chain_flow(first) == certificate,
             [&] { return "z-chain finite " + std::to_string(i) + ": coupling does not route the chain certificate"; });
    for (std::size_t n = cover + 1; n <= cover + 3; ++n) {
      t.expect(by_name(truncated_coupling(li, n)) == first,
               [&] { return "z-chain finite " + std::to_string(i) + ": coupling at level " + std::to_string(n) + " differs"; });
    }
  }
  return t.result("drift, geometric, tree and 40 finite z-chains");
}

Result holley() {
  random::Rng rng(1010);
  Tally t;
  std::size_t holds = 0;
  std::size_t certificates = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t dim = random::uniform_index(rng, 1, 3);
    auto lat = boolean_lattice(dim);
    auto rel = lat.order();
    auto mu1 = random::random_positive_probability(rng, lat.vertex_set());
    Measure mu2 = random::random_positive_probability(rng, lat.vertex_set());
    // Push about half of the pairs upward so that the condition has a chance.
    if (i % 2 == 0) {
      std::vector<Rational> w(mu2.size());
      Rational total = 0;
      for (Vertex v = 0; v < mu2.size(); ++v) {
        w[v] = mu1[v] * (1 + static_cast<long>(__builtin_popcountll(v)) * (1 + static_cast<long>(random::uniform_index(rng, 0, 2))));
        total += w[v];
      }
      for (auto& x : w) x /= total;
      mu2 = Measure(lat.vertex_set(), w);
    }
    auto h = holley_condition(mu1, mu2, lat);
    if (h.holds) {
      ++holds;
      t.expect(oracle::dominates(mu1, mu2, rel), [&] { return "pair " + std::to_string(i) + ": condition holds without dominance"; });
    }
  }
  for (std::size_t dim : {2u, 3u}) {
    auto lat = boolean_lattice(dim);
    auto rel = lat.order();
    for (int i = 0; i < 30; ++i) {
      auto [mu1, mu2] = random::random_dominated_pair(rng, rel);
      auto s = generalized_holley_search(mu1, mu2, lat, 300);
      if (s.outcome != HolleySearchResult::Outcome::InArrowH) continue;
      ++certificates;
      auto [plus, minus] = positive_negative_parts(difference(mu1, mu2));
      t.expect(holley_condition(sum(plus, *s.m), sum(minus, *s.m), lat).holds, [&] { return "search certificate fails to re-verify"; });
      t.expect(oracle::dominates(mu1, mu2, rel), [&] { return "search certificate without dominance"; });
    }
  }
  return t.result("100 positive pairs (" + std::to_string(holds) + " satisfy the condition), " +
                  std::to_string(certificates) + " search certificates");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: run only criterion k.
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Criterion {
    const char* name;
    Result (*run)();
  };
  const Criterion criteria[] = {
      {"strassen triad equivalence", strassen_triad},
      {"constructive coupling algorithms", constructive_algorithms},
      {"decomposition bounds", decomposition_bounds},
      {"stabilization drift", stabilization_drift},
      {"transport equivalence", transport_equivalence},
      {"closed forms", closed_forms},
      {"ring optimality", ring_optimality},
      {"lattice universality", lattice_universality},
      {"truncation soundness", truncation_soundness},
      {"holley sufficiency", holley},
  };
  int failed = 0;
  int k = 0;
  for (const auto& c : criteria) {
    ++k;
    if (only != 0 && k != only) continue;
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", r.pass ? "PASS" : "FAIL", k, c.name, r.detail.c_str());
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", k - failed, k);
  return failed == 0 ? 0 : 1;
}
