#pragma once

// OpenMP kernels. Each has a *_serial twin that computes the same result in a
// single thread; tests compare the two and the benchmark times them.

#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include "flowcouple/digraph.hpp"
#include "flowcouple/rational.hpp"

namespace flowcouple::kernels {

// reach[x * n + y] != 0 iff y is reachable from x by a path of length >= 1.
std::vector<char> reachability(const Digraph& g);
std::vector<char> reachability_serial(const Digraph& g);

struct ShortestPaths {
  std::vector<std::optional<Rational>> dist;
  // Edge id used to reach each vertex; edge_count() for the source and for
  // unreachable vertices.
  std::vector<std::size_t> via;
};

// Dijkstra with exact keys; equal distances are settled in vertex order.
ShortestPaths shortest_paths_from(const Digraph& g, const std::vector<Rational>& weights,
                                  Vertex source);

// Row-major all-pairs geodesic costs; nullopt marks unreachable pairs.
std::vector<std::optional<Rational>> geodesic_matrix(const Digraph& g,
                                                     const std::vector<Rational>& weights);
std::vector<std::optional<Rational>> geodesic_matrix_serial(const Digraph& g,
                                                            const std::vector<Rational>& weights);

// Smallest bitmask U that is an up-set (up[x] subset of U for every x in U)
// with sum_{x in U} delta[x] > 0. `up[x]` has bit y set iff x <= y.
std::optional<std::uint64_t> first_violating_upset(const std::vector<std::uint64_t>& up,
                                                   const std::vector<std::int64_t>& delta);
std::optional<std::uint64_t> first_violating_upset_serial(const std::vector<std::uint64_t>& up,
                                                          const std::vector<std::int64_t>& delta);

// Runs body(i) for i in [0, count) across threads. Results must be written to
// per-index slots by the caller; the first exception (lowest index) is rethrown.
template <class Body>
void for_each_instance(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace flowcouple::kernels
