#include "flowcouple/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <set>

#include "flowcouple/error.hpp"

namespace flowcouple::kernels {

namespace {

void reach_from(const Digraph& g, Vertex source, char* row) {
  std::deque<Vertex> queue{source};
  std::vector<char> seen(g.vertex_count(), 0);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::size_t id : g.out_edges(v)) {
      Vertex u = g.edge(id).to;
      if (!seen[u]) {
        seen[u] = 1;
        row[u] = 1;
        queue.push_back(u);
      }
    }
  }
}

bool is_upset(std::uint64_t mask, const std::vector<std::uint64_t>& up) {
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    int x = __builtin_ctzll(rest);
    if (up[static_cast<std::size_t>(x)] & ~mask) return false;
  }
  return true;
}

bool violates(std::uint64_t mask, const std::vector<std::uint64_t>& up,
              const std::vector<std::int64_t>& delta) {
  if (!is_upset(mask, up)) return false;
  std::int64_t s = 0;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    s += delta[static_cast<std::size_t>(__builtin_ctzll(rest))];
  }
  return s > 0;
}

void check_scan_size(const std::vector<std::uint64_t>& up, const std::vector<std::int64_t>& delta) {
  if (up.size() != delta.size()) throw Error(ErrorKind::Internal, "up-set scan size mismatch");
  if (up.size() > 40) throw Error(ErrorKind::TooLarge, "up-set scan limited to 40 vertices");
}

}  // namespace

std::vector<char> reachability(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> reach(n * n, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
    reach_from(g, static_cast<Vertex>(x), reach.data() + static_cast<std::size_t>(x) * n);
  }
  return reach;
}

std::vector<char> reachability_serial(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> reach(n * n, 0);
  for (Vertex x = 0; x < n; ++x) reach_from(g, x, reach.data() + x * n);
  return reach;
}

ShortestPaths shortest_paths_from(const Digraph& g, const std::vector<Rational>& weights,
                                  Vertex source) {
  const std::size_t n = g.vertex_count();
  if (weights.size() != g.edge_count()) throw Error(ErrorKind::InvalidInput, "weight count mismatch");
  ShortestPaths sp{std::vector<std::optional<Rational>>(n), std::vector<std::size_t>(n, g.edge_count())};
  std::vector<char> settled(n, 0);
  std::set<std::pair<Rational, Vertex>> frontier;
  sp.dist[source] = Rational(0);
  frontier.insert({0, source});
  while (!frontier.empty()) {
    auto [d, v] = *frontier.begin();
    frontier.erase(frontier.begin());
    settled[v] = 1;
    for (std::size_t id : g.out_edges(v)) {
      Vertex u = g.edge(id).to;
      if (settled[u]) continue;
      Rational nd = d + weights[id];
      if (!sp.dist[u] || nd < *sp.dist[u]) {
        if (sp.dist[u]) frontier.erase({*sp.dist[u], u});
        sp.dist[u] = nd;
        sp.via[u] = id;
        frontier.insert({nd, u});
      }
    }
  }
  return sp;
}

std::vector<std::optional<Rational>> geodesic_matrix(const Digraph& g,
                                                     const std::vector<Rational>& weights) {
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<Rational>> cost(n * n);
  kernels::for_each_instance(n, [&](std::size_t x) {
    auto sp = shortest_paths_from(g, weights, x);
    for (Vertex y = 0; y < n; ++y) cost[x * n + y] = std::move(sp.dist[y]);
  });
  return cost;
}

std::vector<std::optional<Rational>> geodesic_matrix_serial(const Digraph& g,
                                                            const std::vector<Rational>& weights) {
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<Rational>> cost(n * n);
  for (Vertex x = 0; x < n; ++x) {
    auto sp = shortest_paths_from(g, weights, x);
    for (Vertex y = 0; y < n; ++y) cost[x * n + y] = std::move(sp.dist[y]);
  }
  return cost;
}

std::optional<std::uint64_t> first_violating_upset(const std::vector<std::uint64_t>& up,
                                                   const std::vector<std::int64_t>& delta) {
  check_scan_size(up, delta);
  const std::uint64_t count = std::uint64_t{1} << up.size();
  constexpr std::uint64_t kBlock = 1 << 12;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::atomic<std::uint64_t> best{count};
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
    if (begin >= best.load(std::memory_order_relaxed)) continue;
    const std::uint64_t end = std::min(count, begin + kBlock);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      if (violates(mask, up, delta)) {
        std::uint64_t current = best.load();
        while (mask < current && !best.compare_exchange_weak(current, mask)) {
        }
        break;
      }
    }
  }
  if (best.load() == count) return std::nullopt;
  return best.load();
}

std::optional<std::uint64_t> first_violating_upset_serial(const std::vector<std::uint64_t>& up,
                                                          const std::vector<std::int64_t>& delta) {
  check_scan_size(up, delta);
  const std::uint64_t count = std::uint64_t{1} << up.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (violates(mask, up, delta)) return mask;
  }
  return std::nullopt;
}

}  // namespace flowcouple::kernels
