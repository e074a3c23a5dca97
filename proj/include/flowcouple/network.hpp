#pragma once

#include <optional>
#include <vector>

#include "flowcouple/rational.hpp"

namespace flowcouple {

// Residual network with exact rational capacities and costs. A missing
// capacity means the arc is uncapacitated.
class Network {
 public:
  explicit Network(std::size_t nodes);

  std::size_t add_arc(std::size_t from, std::size_t to, std::optional<Rational> capacity,
                      Rational cost = 0);

  [[nodiscard]] std::size_t node_count() const noexcept { return head_.size(); }
  [[nodiscard]] std::size_t arc_count() const noexcept { return arcs_.size() / 2; }
  // Flow currently on arc `id` (as returned by add_arc).
  [[nodiscard]] const Rational& flow(std::size_t id) const { return arcs_.at(2 * id).flow; }

  // Edmonds-Karp. Returns the value pushed from s to t.
  Rational max_flow(std::size_t s, std::size_t t);
  // Nodes reachable from s in the residual network.
  [[nodiscard]] std::vector<char> residual_reachable(std::size_t s) const;

  // Successive shortest paths from s to t with potentials; stops after pushing
  // `amount` or when t becomes unreachable. Costs must be nonnegative. Returns
  // the amount pushed.
  Rational min_cost_flow(std::size_t s, std::size_t t, const Rational& amount);

 private:
  struct Arc {
    std::size_t to;
    std::optional<Rational> capacity;
    Rational cost;
    Rational flow;
  };

  [[nodiscard]] bool has_residual(std::size_t a) const;
  [[nodiscard]] std::optional<Rational> residual(std::size_t a) const;
  void push(std::size_t a, const Rational& amount);

  // arcs_[2k] is the forward arc k, arcs_[2k + 1] its reverse.
  std::vector<Arc> arcs_;
  std::vector<std::size_t> tail_;
  std::vector<std::vector<std::size_t>> head_;
};

}  // namespace flowcouple
