#include "flowcouple/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "flowcouple/error.hpp"
#include "flowcouple/json_io.hpp"
#include "flowcouple/kernels.hpp"
#include "flowcouple/random_instances.hpp"

namespace flowcouple::cli {

namespace {

using json::Json;

// A path to a JSON file, or the JSON text itself.
Json load(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse_document(ss.str(), arg);
  }
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return json::parse_document(arg, "inline argument");
  }
  throw Error(ErrorKind::InvalidInput, "\"" + arg + "\" is neither a readable file nor inline JSON");
}

std::vector<std::string> merged_keys(const Json& a, const Json& b) {
  auto keys = json::measure_keys(a, "mu1");
  for (auto& k : json::measure_keys(b, "mu2")) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  return keys;
}

// Output stage of a subcommand: the document plus the exit code it implies.
struct Outcome {
  Json body;
  int code = kExitOk;
};

Outcome cmd_dominance(const std::string& rel_arg, const std::string& mu1_arg, const std::string& mu2_arg,
                      const json::WriteOptions& opts) {
  Json m1 = load(mu1_arg);
  Json m2 = load(mu2_arg);
  auto rel = json::read_relation(load(rel_arg), merged_keys(m1, m2));
  const auto& vs = rel.vertex_set();
  Measure mu1 = json::read_measure(m1, vs, "mu1");
  Measure mu2 = json::read_measure(m2, vs, "mu2");
  auto verdict = dominates_via_flow(mu1, mu2, share(hasse_digraph(rel)));
  return {json::write_verdict(verdict, vs, opts), verdict.dominates ? kExitOk : kExitNegative};
}

Outcome cmd_couple(const std::string& flow_arg, const std::string& mu1_arg, const std::string& method,
                   const json::WriteOptions& opts) {
  Json m1 = load(mu1_arg);
  Flow q = json::read_flow(load(flow_arg), json::measure_keys(m1, "mu1"));
  Measure mu1 = json::read_measure(m1, q.vertex_set(), "mu1");
  Coupling c = method == "ledger" ? coupling_from_flow_ledger(q, mu1) : coupling_from_flow_decomposition(q, mu1);
  return {json::write_coupling(c, opts)};
}

Outcome cmd_decompose(const std::string& flow_arg, bool stabilize, const json::WriteOptions& opts) {
  Flow q = json::read_flow(load(flow_arg));
  PathMeasure pm = path_decompose(q);
  if (!stabilize) return {json::write_path_measure(pm, opts)};
  auto trace = stabilize_decomposition_traced(pm);
  Json body = json::write_path_measure(trace.result, opts);
  body["stable"] = trace.result.is_stable();
  Rational worst = 0;
  for (std::size_t i = 0; i < trace.drift.size(); ++i) {
    if (sgn(trace.inserted_weight[i]) > 0) worst = std::max(worst, Rational(trace.drift[i] / trace.inserted_weight[i]));
  }
  body["max_drift_ratio"] = json::write_rational(worst, opts);
  return {body};
}

Outcome infeasible(const Error& e) {
  return {Json{{"feasible", false}, {"reason", e.what()}}, kExitNegative};
}

Outcome cmd_wasserstein(const std::string& graph_arg, const std::string& mu1_arg, const std::string& mu2_arg,
                        const json::WriteOptions& opts) {
  auto wg = json::read_weighted_digraph(load(graph_arg));
  Measure mu1 = json::read_measure(load(mu1_arg), wg.vertex_set(), "mu1");
  Measure mu2 = json::read_measure(load(mu2_arg), wg.vertex_set(), "mu2");
  try {
    return {json::write_transport(beckmann_min(wg, mu1, mu2), opts)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Infeasible) throw;
    return infeasible(e);
  }
}

Outcome cmd_holley(const std::string& lattice_arg, const std::string& mu1_arg, const std::string& mu2_arg,
                   std::optional<std::size_t> budget, const json::WriteOptions& opts) {
  Lattice lattice = json::read_lattice(load(lattice_arg));
  const auto& vs = lattice.vertex_set();
  Measure mu1 = json::read_measure(load(mu1_arg), vs, "mu1");
  Measure mu2 = json::read_measure(load(mu2_arg), vs, "mu2");
  Json body;
  bool positive = false;
  bool strictly_positive = std::all_of(mu1.weights().begin(), mu1.weights().end(), [](const Rational& r) { return sgn(r) > 0; }) &&
                           std::all_of(mu2.weights().begin(), mu2.weights().end(), [](const Rational& r) { return sgn(r) > 0; });
  if (strictly_positive || !budget) {
    auto h = holley_condition(mu1, mu2, lattice);
    body["holds"] = h.holds;
    body["witness"] = h.witness ? Json{vs->name(h.witness->first), vs->name(h.witness->second)} : Json(nullptr);
    positive = h.holds;
  }
  if (budget) {
    auto s = generalized_holley_search(mu1, mu2, lattice, *budget);
    Json search{{"outcome", s.outcome == HolleySearchResult::Outcome::InArrowH ? "InArrowH" : "Unknown"},
                {"candidates_tried", s.candidates_tried},
                {"dominance_prescreen_failed", s.dominance_prescreen_failed}};
    search["m"] = s.m ? json::write_measure(*s.m, opts) : Json(nullptr);
    body["search"] = search;
    positive = positive || s.outcome == HolleySearchResult::Outcome::InArrowH;
  }
  return {body, positive ? kExitOk : kExitNegative};
}

Json optional_rational(const std::optional<Rational>& r, const json::WriteOptions& opts) {
  return r ? json::write_rational(*r, opts) : Json(nullptr);
}

Outcome cmd_ring(const std::string& graph_arg, const std::string& mu1_arg, const std::string& mu2_arg,
                 const json::WriteOptions& opts) {
  auto wg = json::read_weighted_digraph(load(graph_arg));
  Measure mu1 = json::read_measure(load(mu1_arg), wg.vertex_set(), "mu1");
  Measure mu2 = json::read_measure(load(mu2_arg), wg.vertex_set(), "mu2");
  try {
    auto sol = ring_optimal(wg, mu1, mu2);
    Json cycle = Json::array();
    for (std::size_t i = 0; i + 1 < sol.ring.cycle.size(); ++i) cycle.push_back(wg.digraph().name(sol.ring.cycle[i]));
    return {Json{{"cycle", cycle},
                 {"alpha_low", optional_rational(sol.alpha_low, opts)},
                 {"alpha_high", optional_rational(sol.alpha_high, opts)},
                 {"alpha", json::write_rational(sol.alpha, opts)},
                 {"value", json::write_rational(sol.result.optimal_value, opts)},
                 {"flow", json::write_flow(sol.result.optimal_flow, opts)},
                 {"coupling", json::write_coupling(sol.result.optimal_coupling, opts)}}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Infeasible) throw;
    return infeasible(e);
  }
}

struct TruncateArgs {
  std::string instance;
  std::string params = "{}";
  std::size_t level = 1;
  std::string mode = "split";
  std::optional<std::string> tolerance;
  std::optional<std::string> epsilon;
};

Outcome cmd_truncate(const TruncateArgs& a, const json::WriteOptions& opts) {
  LazyInstance li = json::read_lazy_instance(a.instance, load(a.params));
  auto t = ghost_truncate(li, a.level, a.mode == "single" ? GhostMode::Single : GhostMode::Split);
  Json body{{"instance", a.instance}};
  body.update(json::write_truncation(t, opts));
  Json flux = Json::array();
  for (const auto& level : zero_flux_estimate(li, a.level)) {
    flux.push_back(Json{{"level", level.level},
                        {"outgoing", json::write_rational(level.outgoing, opts)},
                        {"incoming", json::write_rational(level.incoming, opts)}});
  }
  body["flux"] = flux;
  if (a.mode == "split") {
    body["coupling"] = json::write_coupling(coupling_from_flow_decomposition(t.truncated_flow, t.mu1), opts);
  }
  if (a.tolerance) {
    Rational tol = parse_rational(*a.tolerance);
    body["tail_within_tolerance"] = t.tail_bound ? Json(*t.tail_bound <= tol) : Json(nullptr);
  }
  if (a.epsilon) {
    auto report = sup_tail_witness(li, a.level, parse_rational(*a.epsilon));
    Json witnesses = Json::array();
    for (const auto& w : report.witnesses) {
      witnesses.push_back(w ? Json{li.vertex_name(w->from), li.vertex_name(w->to), json::write_rational(w->flow, opts)}
                            : Json(nullptr));
    }
    body["sup_tail"] = Json{{"witness_at_every_level", report.witness_at_every_level},
                            {"witnesses", witnesses},
                            {"summary", report.summary}};
  }
  return {body};
}

// Runs `check` and records its outcome; library errors count as failures.
struct CheckList {
  Json checks = Json::array();
  bool all_ok = true;

  template <class F>
  void run(const std::string& name, F&& check) {
    Json entry{{"name", name}};
    try {
      bool ok = check();
      entry["ok"] = ok;
      all_ok = all_ok && ok;
    } catch (const Error& e) {
      entry["ok"] = false;
      entry["detail"] = e.what();
      all_ok = false;
    }
    checks.push_back(entry);
  }
};

bool marginals_are(const Coupling& c, const Measure& mu1, const Measure& mu2) {
  auto [m1, m2] = marginals(c);
  return m1 == mu1 && m2 == mu2;
}

Json with_vertices(Json sub, const Json& names) {
  if (sub.is_object() && !sub.contains("vertices")) sub["vertices"] = names;
  return sub;
}

Outcome cmd_verify_document(const std::string& doc_arg) {
  Json doc = load(doc_arg);
  if (!doc.is_object() || !doc.contains("vertices")) {
    throw Error(ErrorKind::InvalidInput, "at $: verify documents need a top-level \"vertices\" list");
  }
  const Json names = doc["vertices"];
  auto vs = json::read_relation(Json{{"vertices", names}, {"pairs", Json::array()}}).vertex_set();

  std::optional<Measure> mu1;
  std::optional<Measure> mu2;
  std::optional<Flow> flow;
  if (doc.contains("mu1")) mu1 = json::read_measure(doc["mu1"], vs, "$.mu1");
  if (doc.contains("mu2")) mu2 = json::read_measure(doc["mu2"], vs, "$.mu2");
  if (doc.contains("flow")) flow = json::read_flow(with_vertices(doc["flow"], names));

  CheckList list;
  if (flow) {
    list.run("flow_support_acyclic", [&] { return flow->has_acyclic_support(); });
    if (flow->has_acyclic_support()) {
      list.run("decomposition_round_trip", [&] {
        return flow_from_decomposition(path_decompose(*flow), flow->digraph_ptr()).same_values(*flow);
      });
      list.run("stabilized_decomposition_is_stable", [&] {
        auto s = stabilize_decomposition(path_decompose(*flow));
        return s.is_stable() && flow_from_decomposition(s, flow->digraph_ptr()).dominated_by(*flow);
      });
    }
  }
  if (flow && mu1) {
    list.run("target_nonnegative", [&] { return (void)target_measure(*flow, *mu1), true; });
    if (mu2) list.run("target_matches_mu2", [&] { return target_measure(*flow, *mu1) == *mu2; });
    list.run("ledger_marginals", [&] {
      auto r = coupling_from_flow_ledger_traced(*flow, *mu1);
      return marginals_are(r.coupling, *mu1, target_measure(*flow, *mu1)) &&
             flow_from_coupling(r.coupling, flow->digraph_ptr(), r.paths).same_values(*flow);
    });
    list.run("decomposition_marginals", [&] {
      auto c = coupling_from_flow_decomposition(*flow, *mu1);
      auto target = target_measure(*flow, *mu1);
      return marginals_are(c, *mu1, target) && c.off_diagonal_mass() == half_abs_sum(difference(*mu1, target));
    });
  }
  if (doc.contains("paths") && flow) {
    list.run("paths_induce_flow", [&] {
      auto pm = json::read_path_measure(doc["paths"], vs);
      return flow_from_decomposition(pm, flow->digraph_ptr()).same_values(*flow);
    });
  }
  std::optional<PartialOrderRelation> rel;
  if (doc.contains("relation")) rel = json::read_relation(with_vertices(doc["relation"], names));
  if (doc.contains("coupling") && mu1 && mu2) {
    Coupling c = json::read_coupling(doc["coupling"], vs);
    list.run("coupling_marginals", [&] { return marginals_are(c, *mu1, *mu2); });
    if (rel) list.run("coupling_compatible", [&] { return is_compatible(c, *rel); });
  }
  if (rel && mu1 && mu2) {
    list.run("oracle_matches_flow_solver", [&] {
      return dominates_oracle(*mu1, *mu2, *rel).dominates ==
             dominates_via_flow(*mu1, *mu2, share(hasse_digraph(*rel))).dominates;
    });
  }
  if (doc.contains("weighted_digraph") && mu1 && mu2) {
    auto wg = json::read_weighted_digraph(with_vertices(doc["weighted_digraph"], names));
    list.run("beckmann_equals_kantorovich", [&] {
      return beckmann_min(wg, *mu1, *mu2).optimal_value ==
             kantorovich_min(geodesic_cost_matrix(wg), *mu1, *mu2).optimal_value;
    });
  }
  return {Json{{"checks", list.checks}, {"all_ok", list.all_ok}}, list.all_ok ? kExitOk : kExitNegative};
}

Outcome cmd_verify_random(std::size_t count, std::uint64_t seed) {
  // One slot per instance, filled in parallel, reported in index order.
  std::vector<std::vector<std::string>> failures(count);
  kernels::for_each_instance(count, [&](std::size_t i) {
    random::Rng rng(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    auto fail_if = [&](bool bad, const char* name) {
      if (bad) failures[i].push_back(name);
    };
    auto rel = random::random_poset(rng, random::uniform_index(rng, 2, 7), 0.35);
    Measure mu1 = random::random_probability(rng, rel.vertex_set());
    Measure mu2 = random::random_probability(rng, rel.vertex_set());
    if (random::coin(rng, 0.5)) std::tie(mu1, mu2) = random::random_dominated_pair(rng, rel);
    auto hasse = share(hasse_digraph(rel));
    bool oracle = dominates_oracle(mu1, mu2, rel).dominates;
    bool via_flow = dominates_via_flow(mu1, mu2, hasse).dominates;
    bool built = true;
    try {
      Coupling c = build_compatible_coupling(mu1, mu2, hasse);
      fail_if(!marginals_are(c, mu1, mu2) || !is_compatible(c, rel), "compatible_coupling_valid");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDominated) throw;
      built = false;
    }
    fail_if(oracle != via_flow || oracle != built, "strassen_triad");

    Flow q = random::random_acyclic_flow(rng, random::uniform_index(rng, 2, 8), 0.4);
    Measure source = random::random_admissible_source(rng, q);
    Measure target = target_measure(q, source);
    auto ledger = coupling_from_flow_ledger_traced(q, source);
    fail_if(!marginals_are(ledger.coupling, source, target), "ledger_marginals");
    fail_if(!flow_from_coupling(ledger.coupling, q.digraph_ptr(), ledger.paths).same_values(q), "ledger_round_trip");
    auto dec = coupling_from_flow_decomposition(q, source);
    fail_if(!marginals_are(dec, source, target) ||
                dec.off_diagonal_mass() != half_abs_sum(difference(source, target)),
            "decomposition_coupling");

    auto wg = random::random_connected_weighted(rng, random::uniform_index(rng, 2, 6), 0.2);
    Measure t1 = random::random_probability(rng, wg.vertex_set());
    Measure t2 = random::random_probability(rng, wg.vertex_set());
    fail_if(beckmann_min(wg, t1, t2).optimal_value !=
                kantorovich_min(geodesic_cost_matrix(wg), t1, t2).optimal_value,
            "beckmann_equals_kantorovich");
  });
  Json list = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& name : failures[i]) {
      list.push_back(Json{{"instance", i}, {"check", name}});
      all_ok = false;
    }
  }
  return {Json{{"instances", count}, {"seed", seed}, {"failures", list}, {"all_ok", all_ok}},
          all_ok ? kExitOk : kExitNegative};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flows, couplings and stochastic dominance on finite digraphs", "flowcouple"};
  app.require_subcommand(1);
  bool as_float = false;
  app.add_flag("--float", as_float, "Emit decimals instead of exact p/q strings");

  std::string a1;
  std::string a2;
  std::string a3;
  auto positional3 = [&](CLI::App* sub, const char* n1, const char* n2, const char* n3) {
    sub->add_option(n1, a1)->required();
    sub->add_option(n2, a2)->required();
    sub->add_option(n3, a3)->required();
  };

  auto* dominance = app.add_subcommand("dominance", "Decide mu1 <= mu2 on a poset, with a certificate");
  positional3(dominance, "relation", "mu1", "mu2");

  std::string method = "ledger";
  auto* couple = app.add_subcommand("couple", "Coupling of mu1 and mu1 - div Q from an acyclic flow");
  couple->add_option("flow", a1)->required();
  couple->add_option("mu1", a2)->required();
  couple->add_option("--method", method)->check(CLI::IsMember({"ledger", "decomposition"}));

  bool stabilize = false;
  auto* decompose = app.add_subcommand("decompose", "Path decomposition of an acyclic flow");
  decompose->add_option("flow", a1)->required();
  decompose->add_flag("--stabilize", stabilize, "Rearrange into a stable path collection");

  auto* wasserstein = app.add_subcommand("wasserstein", "Optimal transport under geodesic costs");
  positional3(wasserstein, "graph", "mu1", "mu2");

  std::optional<std::size_t> budget;
  auto* holley = app.add_subcommand("holley", "Holley condition on a finite lattice");
  positional3(holley, "lattice", "mu1", "mu2");
  holley->add_option("--budget", budget, "Also search for a Holley certificate m with this many checks");

  auto* ring = app.add_subcommand("ring", "Optimal circulation parameter on a weighted ring");
  positional3(ring, "graph", "mu1", "mu2");

  TruncateArgs trunc;
  auto* truncate = app.add_subcommand("truncate", "Ghost truncation of a built-in countable instance");
  truncate->add_option("--instance", trunc.instance)->required()->check(CLI::IsMember({"z-chain", "binary-tree"}));
  truncate->add_option("--params", trunc.params, "Instance parameters (file or inline JSON)");
  truncate->add_option("--level", trunc.level)->required();
  truncate->add_option("--mode", trunc.mode)->check(CLI::IsMember({"single", "split"}));
  truncate->add_option("--tolerance", trunc.tolerance, "Report whether the tail bound is within this value");
  truncate->add_option("--epsilon", trunc.epsilon, "Search boundary edges with flow >= epsilon");

  std::optional<std::size_t> random_count;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Invariant report for a bundle of artifacts");
  verify->add_option("document", a1, "JSON with vertices and any of mu1, mu2, flow, paths, coupling, relation, weighted_digraph");
  verify->add_option("--random", random_count, "Check this many seeded random instances instead");
  verify->add_option("--seed", seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  json::WriteOptions opts{as_float};
  try {
    Outcome result;
    if (dominance->parsed()) {
      result = cmd_dominance(a1, a2, a3, opts);
    } else if (couple->parsed()) {
      result = cmd_couple(a1, a2, method, opts);
    } else if (decompose->parsed()) {
      result = cmd_decompose(a1, stabilize, opts);
    } else if (wasserstein->parsed()) {
      result = cmd_wasserstein(a1, a2, a3, opts);
    } else if (holley->parsed()) {
      result = cmd_holley(a1, a2, a3, budget, opts);
    } else if (ring->parsed()) {
      result = cmd_ring(a1, a2, a3, opts);
    } else if (truncate->parsed()) {
      result = cmd_truncate(trunc, opts);
    } else if (random_count) {
      result = cmd_verify_random(*random_count, seed);
    } else {
      if (a1.empty()) throw Error(ErrorKind::InvalidInput, "verify needs a document or --random N");
      result = cmd_verify_document(a1);
    }
    out << result.body.dump() << '\n';
    return result.code;
  } catch (const Error& e) {
    out << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace flowcouple::cli
