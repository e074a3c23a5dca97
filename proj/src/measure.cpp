#include "flowcouple/measure.hpp"

#include "flowcouple/error.hpp"

namespace flowcouple {

namespace {

void check_size(const VertexSetPtr& vs, std::size_t count) {
  if (!vs) throw Error(ErrorKind::InvalidInput, "measure without vertex set");
  if (vs->size() != count) {
    throw Error(ErrorKind::VertexMismatch, "measure has " + std::to_string(count) +
                                               " weights for " + std::to_string(vs->size()) +
                                               " vertices");
  }
}

}  // namespace

SignedMeasure::SignedMeasure(VertexSetPtr vertices, std::vector<Rational> weights)
    : vertices_(std::move(vertices)), weights_(std::move(weights)) {
  check_size(vertices_, weights_.size());
}

SignedMeasure SignedMeasure::zero(VertexSetPtr vertices) {
  std::size_t n = vertices->size();
  return SignedMeasure(std::move(vertices), std::vector<Rational>(n));
}

Rational SignedMeasure::total() const {
  Rational s = 0;
  for (const auto& w : weights_) s += w;
  return s;
}

bool SignedMeasure::is_zero() const {
  for (const auto& w : weights_) {
    if (sgn(w) != 0) return false;
  }
  return true;
}

bool SignedMeasure::operator==(const SignedMeasure& other) const {
  return same_vertices(vertices_, other.vertices_) && weights_ == other.weights_;
}

Measure::Measure(VertexSetPtr vertices, std::vector<Rational> weights)
    : vertices_(std::move(vertices)), weights_(std::move(weights)) {
  check_size(vertices_, weights_.size());
  for (Vertex v = 0; v < weights_.size(); ++v) {
    if (sgn(weights_[v]) < 0) {
      throw Error(ErrorKind::InvalidInput,
                  "negative mass " + to_string(weights_[v]) + " at \"" + vertices_->name(v) + "\"",
                  {v});
    }
  }
}

Measure Measure::zero(VertexSetPtr vertices) {
  std::size_t n = vertices->size();
  return Measure(std::move(vertices), std::vector<Rational>(n));
}

Measure Measure::dirac(VertexSetPtr vertices, Vertex v) {
  std::vector<Rational> w(vertices->size());
  w.at(v) = 1;
  return Measure(std::move(vertices), std::move(w));
}

Rational Measure::total() const {
  Rational s = 0;
  for (const auto& w : weights_) s += w;
  return s;
}

std::vector<Vertex> Measure::support() const {
  std::vector<Vertex> result;
  for (Vertex v = 0; v < weights_.size(); ++v) {
    if (sgn(weights_[v]) > 0) result.push_back(v);
  }
  return result;
}

Rational Measure::mass_of(const std::vector<Vertex>& set) const {
  Rational s = 0;
  for (Vertex v : set) s += weights_.at(v);
  return s;
}

bool Measure::operator==(const Measure& other) const {
  return same_vertices(vertices_, other.vertices_) && weights_ == other.weights_;
}

void require_probability(const Measure& m, const char* what) {
  if (!m.is_probability()) {
    throw Error(ErrorKind::InvalidInput,
                std::string(what) + " must have total mass 1, got " + to_string(m.total()));
  }
}

SignedMeasure difference(const Measure& m1, const Measure& m2) {
  require_same_vertices(m1.vertex_set(), m2.vertex_set(), "difference");
  std::vector<Rational> w(m1.size());
  for (Vertex v = 0; v < w.size(); ++v) w[v] = m1[v] - m2[v];
  return SignedMeasure(m1.vertex_set(), std::move(w));
}

std::pair<Measure, Measure> positive_negative_parts(const SignedMeasure& d) {
  std::vector<Rational> pos(d.size());
  std::vector<Rational> neg(d.size());
  for (Vertex v = 0; v < d.size(); ++v) {
    if (sgn(d[v]) > 0) pos[v] = d[v];
    if (sgn(d[v]) < 0) neg[v] = -d[v];
  }
  return {Measure(d.vertex_set(), std::move(pos)), Measure(d.vertex_set(), std::move(neg))};
}

Rational half_abs_sum(const SignedMeasure& d) {
  Rational s = 0;
  for (const auto& w : d.weights()) s += abs_value(w);
  return s / 2;
}

Rational half_total_variation(const Measure& m1, const Measure& m2) {
  return half_abs_sum(difference(m1, m2));
}

std::vector<Rational> distribution_function(const Measure& m, const std::vector<Vertex>& chain_order) {
  std::vector<char> listed(m.size(), 0);
  for (Vertex v : chain_order) {
    if (v >= m.size()) throw Error(ErrorKind::VertexMismatch, "chain vertex out of range");
    if (listed[v]) {
      throw Error(ErrorKind::VertexMismatch,
                  "chain lists \"" + m.vertex_set()->name(v) + "\" twice", {v});
    }
    listed[v] = 1;
  }
  for (Vertex v : m.support()) {
    if (!listed[v]) {
      throw Error(ErrorKind::VertexMismatch,
                  "support vertex \"" + m.vertex_set()->name(v) + "\" missing from chain", {v});
    }
  }
  std::vector<Rational> result;
  result.reserve(chain_order.size());
  Rational running = 0;
  for (Vertex v : chain_order) {
    running += m[v];
    result.push_back(running);
  }
  return result;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> v_minus_v_plus(const SignedMeasure& d) {
  std::pair<std::vector<Vertex>, std::vector<Vertex>> result;
  for (Vertex v = 0; v < d.size(); ++v) {
    if (sgn(d[v]) > 0) result.first.push_back(v);
    if (sgn(d[v]) < 0) result.second.push_back(v);
  }
  return result;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> v_minus_v_plus(const Measure& m1,
                                                                   const Measure& m2) {
  return v_minus_v_plus(difference(m1, m2));
}

Measure pointwise_min(const Measure& m1, const Measure& m2) {
  require_same_vertices(m1.vertex_set(), m2.vertex_set(), "pointwise_min");
  std::vector<Rational> w(m1.size());
  for (Vertex v = 0; v < w.size(); ++v) w[v] = m1[v] < m2[v] ? m1[v] : m2[v];
  return Measure(m1.vertex_set(), std::move(w));
}

Measure sum(const Measure& m1, const Measure& m2) {
  require_same_vertices(m1.vertex_set(), m2.vertex_set(), "sum");
  std::vector<Rational> w(m1.size());
  for (Vertex v = 0; v < w.size(); ++v) w[v] = m1[v] + m2[v];
  return Measure(m1.vertex_set(), std::move(w));
}

Measure scaled(const Measure& m, const Rational& factor) {
  std::vector<Rational> w(m.size());
  for (Vertex v = 0; v < w.size(); ++v) w[v] = m[v] * factor;
  return Measure(m.vertex_set(), std::move(w));
}

}  // namespace flowcouple
