#include "flowcouple/json_io.hpp"

#include <unordered_set>

#include "flowcouple/error.hpp"

namespace flowcouple::json {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "at " + path + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string read_name(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a vertex name");
  return j.get<std::string>();
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::vector<std::string> read_names(const Json& j, const std::string& path) {
  std::vector<std::string> names;
  array_at(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) names.push_back(read_name(j[i], index_path(path, i)));
  return names;
}

Vertex vertex_at(const VertexSetPtr& vs, const Json& j, const std::string& path) {
  std::string name = read_name(j, path);
  auto v = vs->find(name);
  if (!v) throw Error(ErrorKind::VertexMismatch, "at " + path + ": unknown vertex \"" + name + "\"");
  return *v;
}

// Names in first-appearance order over items[i][0], items[i][1], then `extra`.
std::vector<std::string> collect_names(const Json& items, const std::string& path,
                                       const std::vector<std::string>& extra) {
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string p = index_path(path, i);
    if (!items[i].is_array() || items[i].size() < 2) fail(p, "expected [from, to, ...]");
    for (std::size_t k = 0; k < 2; ++k) {
      std::string name = read_name(items[i][k], index_path(p, k));
      if (seen.insert(name).second) names.push_back(std::move(name));
    }
  }
  for (const auto& name : extra) {
    if (seen.insert(name).second) names.push_back(name);
  }
  return names;
}

VertexSetPtr vertices_or_collect(const Json& j, const char* list_key, const std::string& path,
                                 const std::vector<std::string>& extra) {
  if (j.contains("vertices")) return make_vertex_set(read_names(j["vertices"], path + ".vertices"));
  const Json& items = array_at(member(j, list_key, path), path + "." + list_key);
  return make_vertex_set(collect_names(items, path + "." + list_key, extra));
}

Json write_names(const std::vector<Vertex>& vs, const VertexSetPtr& names) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(names->name(v));
  return out;
}

}  // namespace

Json parse_document(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, origin + ": malformed JSON (" + e.what() + ")");
  }
}

Rational read_rational(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected a rational (\"3/10\", \"0.5\" or a number)");
}

Json write_rational(const Rational& value, const WriteOptions& opts) {
  if (opts.as_float) return value.get_d();
  return to_string(value);
}

Digraph read_digraph(const Json& j) {
  auto vs = vertices_or_collect(j, "edges", "$", {});
  const Json& edges = array_at(member(j, "edges", "$"), "$.edges");
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = index_path("$.edges", i);
    if (!edges[i].is_array() || edges[i].size() != 2) fail(p, "expected [from, to]");
    out.push_back({vertex_at(vs, edges[i][0], index_path(p, 0)), vertex_at(vs, edges[i][1], index_path(p, 1))});
  }
  return Digraph(vs, std::move(out));
}

Json write_digraph(const Digraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({g.name(e.from), g.name(e.to)});
  return Json{{"vertices", g.vertex_set()->names()}, {"edges", edges}};
}

PartialOrderRelation read_relation(const Json& j, const std::vector<std::string>& extra) {
  auto vs = vertices_or_collect(j, "pairs", "$", extra);
  const Json& pairs = array_at(member(j, "pairs", "$"), "$.pairs");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string p = index_path("$.pairs", i);
    if (!pairs[i].is_array() || pairs[i].size() != 2) fail(p, "expected [x, y]");
    out.emplace_back(vertex_at(vs, pairs[i][0], index_path(p, 0)),
                     vertex_at(vs, pairs[i][1], index_path(p, 1)));
  }
  return PartialOrderRelation(vs, out);
}

Json write_relation(const PartialOrderRelation& rel) {
  Json pairs = Json::array();
  const auto& vs = *rel.vertex_set();
  for (auto [x, y] : rel.pairs()) {
    if (x != y) pairs.push_back({vs.name(x), vs.name(y)});
  }
  return Json{{"vertices", vs.names()}, {"pairs", pairs}};
}

std::vector<std::string> measure_keys(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a measure object");
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  return keys;
}

SignedMeasure read_signed_measure(const Json& j, const VertexSetPtr& vertices, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a measure object");
  std::vector<Rational> w(vertices->size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto v = vertices->find(it.key());
    if (!v) {
      throw Error(ErrorKind::VertexMismatch, "at " + path + ": unknown vertex \"" + it.key() + "\"");
    }
    w[*v] = read_rational(it.value(), path + "." + it.key());
  }
  return SignedMeasure(vertices, std::move(w));
}

Measure read_measure(const Json& j, const VertexSetPtr& vertices, const std::string& path) {
  auto s = read_signed_measure(j, vertices, path);
  for (Vertex v = 0; v < s.size(); ++v) {
    if (sgn(s[v]) < 0) fail(path + "." + vertices->name(v), "negative mass");
  }
  return Measure(vertices, s.weights());
}

Json write_measure(const Measure& m, const WriteOptions& opts) {
  return write_signed_measure(m.as_signed(), opts);
}

Json write_signed_measure(const SignedMeasure& m, const WriteOptions& opts) {
  Json out = Json::object();
  for (Vertex v = 0; v < m.size(); ++v) out[m.vertex_set()->name(v)] = write_rational(m[v], opts);
  return out;
}

Flow read_flow(const Json& j, const std::vector<std::string>& extra) {
  auto vs = vertices_or_collect(j, "edges", "$", extra);
  const Json& edges = array_at(member(j, "edges", "$"), "$.edges");
  std::vector<Edge> out;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = index_path("$.edges", i);
    if (!edges[i].is_array() || edges[i].size() != 3) fail(p, "expected [from, to, value]");
    out.push_back({vertex_at(vs, edges[i][0], index_path(p, 0)), vertex_at(vs, edges[i][1], index_path(p, 1))});
    values.push_back(read_rational(edges[i][2], index_path(p, 2)));
    if (sgn(values.back()) < 0) fail(index_path(p, 2), "negative flow value");
  }
  return Flow(share(Digraph(vs, std::move(out))), std::move(values));
}

Json write_flow(const Flow& q, const WriteOptions& opts) {
  Json edges = Json::array();
  const auto& g = q.digraph();
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    edges.push_back({g.name(e.from), g.name(e.to), write_rational(q.value(id), opts)});
  }
  return Json{{"vertices", g.vertex_set()->names()}, {"edges", edges}};
}

Json write_flow_edges(const Flow& q, const WriteOptions& opts) {
  Json edges = Json::array();
  const auto& g = q.digraph();
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    if (sgn(q.value(id)) <= 0) continue;
    const Edge& e = g.edge(id);
    edges.push_back({g.name(e.from), g.name(e.to), write_rational(q.value(id), opts)});
  }
  return edges;
}

WeightedDigraph read_weighted_digraph(const Json& j) {
  Flow as_flow = read_flow(j);
  return WeightedDigraph(as_flow.digraph_ptr(), as_flow.values());
}

Json write_weighted_digraph(const WeightedDigraph& wg, const WriteOptions& opts) {
  return write_flow(Flow(wg.graph, wg.weights), opts);
}

PathMeasure read_path_measure(const Json& j, const VertexSetPtr& vertices) {
  const Json& paths = array_at(member(j, "paths", "$"), "$.paths");
  std::vector<PathEntry> entries;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string p = index_path("$.paths", i);
    const Json& vs = array_at(member(paths[i], "vertices", p), p + ".vertices");
    DirectedPath path;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      path.vertices.push_back(vertex_at(vertices, vs[k], index_path(p + ".vertices", k)));
    }
    entries.push_back({std::move(path), read_rational(member(paths[i], "weight", p), p + ".weight")});
  }
  return PathMeasure(vertices, std::move(entries));
}

Json write_path_measure(const PathMeasure& pm, const WriteOptions& opts) {
  Json paths = Json::array();
  for (const auto& e : pm.entries()) {
    paths.push_back(Json{{"vertices", write_names(e.path.vertices, pm.vertex_set())},
                         {"weight", write_rational(e.weight, opts)}});
  }
  return Json{{"paths", paths}};
}

Coupling read_coupling(const Json& j, const VertexSetPtr& vertices) {
  const Json& pairs = array_at(member(j, "pairs", "$"), "$.pairs");
  Coupling c(vertices);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string p = index_path("$.pairs", i);
    if (!pairs[i].is_array() || pairs[i].size() != 3) fail(p, "expected [x, y, mass]");
    Rational m = read_rational(pairs[i][2], index_path(p, 2));
    if (sgn(m) < 0) fail(index_path(p, 2), "negative mass");
    c.add(vertex_at(vertices, pairs[i][0], index_path(p, 0)), vertex_at(vertices, pairs[i][1], index_path(p, 1)), m);
  }
  return c;
}

Json write_coupling(const Coupling& c, const WriteOptions& opts) {
  Json pairs = Json::array();
  const auto& vs = *c.vertex_set();
  for (auto [x, y] : c.support()) pairs.push_back({vs.name(x), vs.name(y), write_rational(c(x, y), opts)});
  return Json{{"pairs", pairs}};
}

Json write_verdict(const DominanceVerdict& v, const VertexSetPtr& vertices, const WriteOptions& opts) {
  Json cert;
  if (const Flow* q = v.flow()) {
    cert = Json{{"flow", write_flow_edges(*q, opts)}};
  } else if (const UpSet* u = v.up_set()) {
    cert = Json{{"up_set", write_names(*u, vertices)}};
  } else {
    cert = Json{{"enumeration", true}};
  }
  return Json{{"dominates", v.dominates}, {"certificate", cert}};
}

Json write_transport(const TransportResult& r, const WriteOptions& opts) {
  return Json{{"value", write_rational(r.optimal_value, opts)},
              {"flow", write_flow(r.optimal_flow, opts)},
              {"coupling", write_coupling(r.optimal_coupling, opts)}};
}

Lattice read_lattice(const Json& j) {
  if (!j.is_object()) fail("$", "expected a lattice object");
  if (j.contains("boolean")) {
    if (!j["boolean"].is_number_unsigned()) fail("$.boolean", "expected a dimension");
    return boolean_lattice(j["boolean"].get<std::size_t>());
  }
  auto vs = make_vertex_set(read_names(member(j, "vertices", "$"), "$.vertices"));
  const std::size_t n = vs->size();
  auto table = [&](const char* key) {
    const std::string path = std::string("$.") + key;
    const Json& rows = array_at(member(j, key, "$"), path);
    if (rows.size() != n) fail(path, "expected " + std::to_string(n) + " rows");
    std::vector<Vertex> t;
    for (std::size_t x = 0; x < n; ++x) {
      const std::string rp = index_path(path, x);
      if (!rows[x].is_array() || rows[x].size() != n) fail(rp, "expected " + std::to_string(n) + " entries");
      for (std::size_t y = 0; y < n; ++y) t.push_back(vertex_at(vs, rows[x][y], index_path(rp, y)));
    }
    return t;
  };
  return Lattice(vs, table("join"), table("meet"));
}

namespace {

std::string kind_of(const Json& params) {
  if (!params.is_object()) fail("$", "expected an instance parameter object");
  if (!params.contains("kind")) return "finite";
  if (!params["kind"].is_string()) fail("$.kind", "expected a string");
  return params["kind"].get<std::string>();
}

template <typename Key, typename Parse>
std::map<Key, Rational> read_support(const Json& params, const char* key, Parse parse_key) {
  std::map<Key, Rational> out;
  if (!params.contains(key)) return out;
  const std::string path = std::string("$.") + key;
  const Json& m = params[key];
  if (!m.is_object()) fail(path, "expected a measure object");
  for (auto it = m.begin(); it != m.end(); ++it) {
    out[parse_key(it.key(), path)] += read_rational(it.value(), path + "." + it.key());
  }
  return out;
}

long parse_integer(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(path, "\"" + s + "\" is not an integer");
}

}  // namespace

LazyInstance read_lazy_instance(const std::string& name, const Json& params) {
  const std::string kind = kind_of(params);
  if (name == "z-chain") {
    ZChainParams p;
    if (kind == "finite") {
      p.kind = ZChainParams::Kind::FinitelySupported;
      p.mu1 = read_support<long>(params, "mu1", parse_integer);
      p.mu2 = read_support<long>(params, "mu2", parse_integer);
    } else if (kind == "geometric") {
      p.kind = ZChainParams::Kind::Geometric;
      p.r1 = read_rational(member(params, "r1", "$"), "$.r1");
      p.r2 = read_rational(member(params, "r2", "$"), "$.r2");
    } else if (kind == "drift") {
      p.kind = ZChainParams::Kind::Drift;
      p.drift = read_rational(member(params, "drift", "$"), "$.drift");
    } else {
      fail("$.kind", "z-chain kinds are finite, geometric, drift");
    }
    return z_chain_instance(p);
  }
  if (name == "binary-tree") {
    BinaryTreeParams p;
    auto by_name = [](const std::string& s, const std::string&) { return binary_tree_index(s); };
    if (kind == "finite") {
      p.kind = BinaryTreeParams::Kind::FinitelySupported;
      p.mu1 = read_support<std::size_t>(params, "mu1", by_name);
      p.mu2 = read_support<std::size_t>(params, "mu2", by_name);
    } else if (kind == "geometric") {
      p.kind = BinaryTreeParams::Kind::Geometric;
      p.r = read_rational(member(params, "r", "$"), "$.r");
    } else {
      fail("$.kind", "binary-tree kinds are finite, geometric");
    }
    return binary_tree_instance(p);
  }
  throw Error(ErrorKind::InvalidInput, "unknown instance \"" + name + "\" (z-chain, binary-tree)");
}

Json write_truncation(const TruncatedInstance& t, const WriteOptions& opts) {
  Json out{{"level", t.level},
           {"mode", t.mode == GhostMode::Single ? "single" : "split"},
           {"vertices", t.truncated_flow.vertex_set()->names()},
           {"flow", write_flow_edges(t.truncated_flow, opts)},
           {"mu1", write_measure(t.mu1, opts)},
           {"mu2", write_measure(t.mu2, opts)},
           {"boundary_defect", write_signed_measure(t.boundary_defect, opts)},
           {"ghost_in", write_rational(t.ghost_in, opts)},
           {"ghost_out", write_rational(t.ghost_out, opts)}};
  out["tail_bound"] = t.tail_bound ? write_rational(*t.tail_bound, opts) : Json(nullptr);
  if (t.flux_bounds_checked) out["flux_bounds_hold"] = t.flux_bounds_hold;
  return out;
}

}  // namespace flowcouple::json
