#pragma once

#include <utility>
#include <vector>

#include "flowcouple/digraph.hpp"
#include "flowcouple/rational.hpp"

namespace flowcouple {

class SignedMeasure {
 public:
  SignedMeasure(VertexSetPtr vertices, std::vector<Rational> weights);
  static SignedMeasure zero(VertexSetPtr vertices);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] const Rational& operator[](Vertex v) const { return weights_.at(v); }
  [[nodiscard]] const std::vector<Rational>& weights() const noexcept { return weights_; }
  [[nodiscard]] Rational total() const;
  [[nodiscard]] bool is_zero() const;

  bool operator==(const SignedMeasure& other) const;

 private:
  VertexSetPtr vertices_;
  std::vector<Rational> weights_;
};

// Nonnegative weights; construction throws Error(InvalidInput) on negatives.
class Measure {
 public:
  Measure(VertexSetPtr vertices, std::vector<Rational> weights);
  static Measure zero(VertexSetPtr vertices);
  static Measure dirac(VertexSetPtr vertices, Vertex v);

  [[nodiscard]] const VertexSetPtr& vertex_set() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
  [[nodiscard]] const Rational& operator[](Vertex v) const { return weights_.at(v); }
  [[nodiscard]] const std::vector<Rational>& weights() const noexcept { return weights_; }
  [[nodiscard]] Rational total() const;
  [[nodiscard]] bool is_probability() const { return total() == 1; }
  [[nodiscard]] std::vector<Vertex> support() const;
  [[nodiscard]] Rational mass_of(const std::vector<Vertex>& set) const;
  [[nodiscard]] SignedMeasure as_signed() const { return SignedMeasure(vertices_, weights_); }

  bool operator==(const Measure& other) const;

 private:
  VertexSetPtr vertices_;
  std::vector<Rational> weights_;
};

// Error(InvalidInput) unless the masses sum to exactly 1.
void require_probability(const Measure& m, const char* what);

SignedMeasure difference(const Measure& m1, const Measure& m2);
// ([d]_+, [-d]_+).
std::pair<Measure, Measure> positive_negative_parts(const SignedMeasure& d);
Rational half_total_variation(const Measure& m1, const Measure& m2);
// Half of sum |d(x)|.
Rational half_abs_sum(const SignedMeasure& d);
// Prefix sums of m along `chain_order`, aligned with it. The chain must list
// every support vertex of m, each at most once.
std::vector<Rational> distribution_function(const Measure& m, const std::vector<Vertex>& chain_order);
// (V_-, V_+) = ({m1 > m2}, {m1 < m2}) in index order.
std::pair<std::vector<Vertex>, std::vector<Vertex>> v_minus_v_plus(const Measure& m1,
                                                                   const Measure& m2);
// Same split for an arbitrary signed divergence: ({d > 0}, {d < 0}).
std::pair<std::vector<Vertex>, std::vector<Vertex>> v_minus_v_plus(const SignedMeasure& d);

Measure pointwise_min(const Measure& m1, const Measure& m2);
Measure sum(const Measure& m1, const Measure& m2);
Measure scaled(const Measure& m, const Rational& factor);

}  // namespace flowcouple
