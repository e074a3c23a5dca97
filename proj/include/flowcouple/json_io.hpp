#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flowcouple/coupling.hpp"
#include "flowcouple/decomposition.hpp"
#include "flowcouple/dominance.hpp"
#include "flowcouple/flow.hpp"
#include "flowcouple/infinite.hpp"
#include "flowcouple/lattice.hpp"
#include "flowcouple/measure.hpp"
#include "flowcouple/order.hpp"
#include "flowcouple/transport.hpp"

namespace flowcouple::json {

// Keys keep insertion order, so objects come out in vertex input order.
using Json = nlohmann::ordered_json;

struct WriteOptions {
  bool as_float = false;  // emit doubles instead of "p/q" strings
};

// Parse failures throw Error(InvalidInput) naming the JSON path ("$.edges[2][1]").
Json parse_document(const std::string& text, const std::string& origin);

Rational read_rational(const Json& j, const std::string& path);
Json write_rational(const Rational& value, const WriteOptions& opts = {});

// {"vertices": [...], "edges": [["a","b"], ...]}
Digraph read_digraph(const Json& j);
Json write_digraph(const Digraph& g);

// {"pairs": [["a","b"], ...]} with optional "vertices". Without it the vertex
// set is the pair names in order of first appearance, then `extra`.
PartialOrderRelation read_relation(const Json& j, const std::vector<std::string>& extra = {});
Json write_relation(const PartialOrderRelation& rel);

// {"a": "1/2", ...}; absent vertices have mass 0, unknown names are rejected.
Measure read_measure(const Json& j, const VertexSetPtr& vertices, const std::string& path = "$");
SignedMeasure read_signed_measure(const Json& j, const VertexSetPtr& vertices,
                                  const std::string& path = "$");
Json write_measure(const Measure& m, const WriteOptions& opts = {});
Json write_signed_measure(const SignedMeasure& m, const WriteOptions& opts = {});
// Names used as keys of a measure object, in order.
std::vector<std::string> measure_keys(const Json& j, const std::string& path = "$");

// {"edges": [["a","b","0.5"], ...]} with optional "vertices" (default: names in
// order of first appearance, then `extra`).
Flow read_flow(const Json& j, const std::vector<std::string>& extra = {});
Json write_flow(const Flow& q, const WriteOptions& opts = {});
// Positive edges only, as a bare list of triples.
Json write_flow_edges(const Flow& q, const WriteOptions& opts = {});

// {"vertices": [...], "edges": [["a","b","1.5"], ...]}
WeightedDigraph read_weighted_digraph(const Json& j);
Json write_weighted_digraph(const WeightedDigraph& wg, const WriteOptions& opts = {});

// {"paths": [{"vertices": ["a","b"], "weight": "1/3"}, ...]}
PathMeasure read_path_measure(const Json& j, const VertexSetPtr& vertices);
Json write_path_measure(const PathMeasure& pm, const WriteOptions& opts = {});

// {"pairs": [["a","b","1/4"], ...]}, positive entries in (x, y) index order.
Coupling read_coupling(const Json& j, const VertexSetPtr& vertices);
Json write_coupling(const Coupling& c, const WriteOptions& opts = {});

// {"dominates": bool, "certificate": {"flow": [...]} | {"up_set": [...]} | {"enumeration": true}}
Json write_verdict(const DominanceVerdict& v, const VertexSetPtr& vertices,
                   const WriteOptions& opts = {});

// {"value", "flow", "coupling"}
Json write_transport(const TransportResult& r, const WriteOptions& opts = {});

// {"boolean": N} or {"vertices": [...], "join": [[...]], "meet": [[...]]}
// with table entries given as vertex names.
Lattice read_lattice(const Json& j);

LazyInstance read_lazy_instance(const std::string& name, const Json& params);
Json write_truncation(const TruncatedInstance& t, const WriteOptions& opts = {});

}  // namespace flowcouple::json
