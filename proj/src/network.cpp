#include "flowcouple/network.hpp"

#include <deque>
#include <set>

#include "flowcouple/error.hpp"

namespace flowcouple {

Network::Network(std::size_t nodes) : head_(nodes) {}

std::size_t Network::add_arc(std::size_t from, std::size_t to, std::optional<Rational> capacity,
                             Rational cost) {
  if (from >= node_count() || to >= node_count()) {
    throw Error(ErrorKind::Internal, "network arc out of range");
  }
  if (capacity && sgn(*capacity) < 0) throw Error(ErrorKind::Internal, "negative capacity");
  std::size_t id = arcs_.size() / 2;
  head_[from].push_back(arcs_.size());
  tail_.push_back(from);
  arcs_.push_back({to, std::move(capacity), cost, 0});
  head_[to].push_back(arcs_.size());
  tail_.push_back(to);
  arcs_.push_back({from, Rational(0), -cost, 0});
  return id;
}

std::optional<Rational> Network::residual(std::size_t a) const {
  const Arc& arc = arcs_[a];
  if (!arc.capacity) return std::nullopt;
  return Rational(*arc.capacity - arc.flow);
}

bool Network::has_residual(std::size_t a) const {
  const Arc& arc = arcs_[a];
  return !arc.capacity || arc.flow < *arc.capacity;
}

void Network::push(std::size_t a, const Rational& amount) {
  arcs_[a].flow += amount;
  arcs_[a ^ 1].flow -= amount;
}

Rational Network::max_flow(std::size_t s, std::size_t t) {
  Rational total = 0;
  const std::size_t n = node_count();
  for (;;) {
    std::vector<std::size_t> via(n, arcs_.size());
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty() && !seen[t]) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t a : head_[v]) {
        std::size_t u = arcs_[a].to;
        if (seen[u] || !has_residual(a)) continue;
        seen[u] = 1;
        via[u] = a;
        queue.push_back(u);
      }
    }
    if (!seen[t]) return total;
    std::optional<Rational> bottleneck;
    for (std::size_t v = t; v != s; v = tail_[via[v]]) {
      auto r = residual(via[v]);
      if (r && (!bottleneck || *r < *bottleneck)) bottleneck = r;
    }
    if (!bottleneck) throw Error(ErrorKind::Internal, "uncapacitated augmenting path");
    for (std::size_t v = t; v != s; v = tail_[via[v]]) push(via[v], *bottleneck);
    total += *bottleneck;
  }
}

std::vector<char> Network::residual_reachable(std::size_t s) const {
  std::vector<char> seen(node_count(), 0);
  seen[s] = 1;
  std::deque<std::size_t> queue{s};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t a : head_[v]) {
      std::size_t u = arcs_[a].to;
      if (!seen[u] && has_residual(a)) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

Rational Network::min_cost_flow(std::size_t s, std::size_t t, const Rational& amount) {
  const std::size_t n = node_count();
  for (std::size_t a = 0; a < arcs_.size(); a += 2) {
    if (sgn(arcs_[a].cost) < 0) throw Error(ErrorKind::Internal, "negative arc cost");
  }
  std::vector<Rational> potential(n);
  Rational pushed = 0;
  while (pushed < amount) {
    // Dijkstra on reduced costs; ties by node index through the set order.
    std::vector<std::optional<Rational>> dist(n);
    std::vector<std::size_t> via(n, arcs_.size());
    std::vector<char> settled(n, 0);
    std::set<std::pair<Rational, std::size_t>> frontier;
    dist[s] = Rational(0);
    frontier.insert({0, s});
    while (!frontier.empty()) {
      auto [d, v] = *frontier.begin();
      frontier.erase(frontier.begin());
      if (settled[v]) continue;
      settled[v] = 1;
      for (std::size_t a : head_[v]) {
        if (!has_residual(a)) continue;
        std::size_t u = arcs_[a].to;
        if (settled[u]) continue;
        Rational nd = d + arcs_[a].cost + potential[v] - potential[u];
        if (!dist[u] || nd < *dist[u]) {
          if (dist[u]) frontier.erase({*dist[u], u});
          dist[u] = nd;
          via[u] = a;
          frontier.insert({nd, u});
        }
      }
    }
    if (!dist[t]) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v]) potential[v] += *dist[v];
    }
    Rational bottleneck = amount - pushed;
    for (std::size_t v = t; v != s; v = tail_[via[v]]) {
      auto r = residual(via[v]);
      if (r && *r < bottleneck) bottleneck = *r;
    }
    for (std::size_t v = t; v != s; v = tail_[via[v]]) push(via[v], bottleneck);
    pushed += bottleneck;
  }
  return pushed;
}

}  // namespace flowcouple
