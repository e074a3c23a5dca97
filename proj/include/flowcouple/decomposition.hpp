#pragma once

#include <vector>

#include "flowcouple/flow.hpp"

namespace flowcouple {

struct PathEntry {
  DirectedPath path;
  Rational weight;
};

// Finite measure on self-avoiding paths.
class PathMeasure {
 public:
  explicit PathMeasure(VertexSetPtr vertices, std::vector<PathEntry> entries = {});

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<PathEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] Rational total_weight() const;
  // sum_n q_n |gamma_n|
  [[nodiscard]] Rational weighted_length() const;
  // No vertex is both the start of one entry and the end of another.
  [[nodiscard]] bool is_stable() const;
  // Sum_{source = x} q - Sum_{target = x} q.
  [[nodiscard]] SignedMeasure endpoint_divergence() const;

 private:
  VertexSetPtr vertices_;
  std::vector<PathEntry> entries_;
};

// Greedy peeling from V_- (positive residual divergence), smallest index first,
// following the smallest-id positive out-edge until a vertex of V_+ is reached.
// CyclicSupport when the support has a directed cycle.
PathMeasure path_decompose(const Flow& q);

Flow flow_from_decomposition(const PathMeasure& pm, const DigraphPtr& graph);

struct StabilizationTrace {
  PathMeasure result;
  // For every processed entry: its weight and the L1 distance between the
  // path measures before and after its insertion.
  std::vector<Rational> inserted_weight;
  std::vector<Rational> drift;
};

// Inserts entries one at a time, splicing every new path with existing paths
// that end at its start or begin at its end (smallest weight first).
PathMeasure stabilize_decomposition(const PathMeasure& pm);
StabilizationTrace stabilize_decomposition_traced(const PathMeasure& pm);

// L1 distance between two path measures viewed as functions on paths.
Rational path_measure_distance(const PathMeasure& a, const PathMeasure& b);

}  // namespace flowcouple
