#include "flowcouple/lattice.hpp"

#include "flowcouple/dominance.hpp"
#include "flowcouple/error.hpp"

namespace flowcouple {

namespace {

Rational pow2(int k) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

}  // namespace

Lattice::Lattice(VertexSetPtr vertices, std::vector<Vertex> join_table, std::vector<Vertex> meet_table)
    : vertices_(std::move(vertices)), join_(std::move(join_table)), meet_(std::move(meet_table)) {
  const std::size_t n = size();
  if (join_.size() != n * n || meet_.size() != n * n) {
    throw Error(ErrorKind::NotALattice, "join/meet tables must be n x n");
  }
  for (Vertex v : join_) {
    if (v >= n) throw Error(ErrorKind::NotALattice, "join table entry out of range");
  }
  for (Vertex v : meet_) {
    if (v >= n) throw Error(ErrorKind::NotALattice, "meet table entry out of range");
  }
  const auto& vs = *vertices_;
  auto fail = [&](const std::string& law, std::vector<Vertex> witness) {
    std::string names;
    for (Vertex v : witness) names += (names.empty() ? "" : ", ") + vs.name(v);
    throw Error(ErrorKind::NotALattice, law + " fails at (" + names + ")", std::move(witness));
  };
  for (Vertex x = 0; x < n; ++x) {
    if (join(x, x) != x || meet(x, x) != x) fail("idempotence", {x});
    for (Vertex y = 0; y < n; ++y) {
      if (join(x, y) != join(y, x)) fail("join commutativity", {x, y});
      if (meet(x, y) != meet(y, x)) fail("meet commutativity", {x, y});
      if (join(x, meet(x, y)) != x || meet(x, join(x, y)) != x) fail("absorption", {x, y});
      for (Vertex z = 0; z < n; ++z) {
        if (join(join(x, y), z) != join(x, join(y, z))) fail("join associativity", {x, y, z});
        if (meet(meet(x, y), z) != meet(x, meet(y, z))) fail("meet associativity", {x, y, z});
      }
    }
  }
}

PartialOrderRelation Lattice::order() const {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex x = 0; x < size(); ++x) {
    for (Vertex y = 0; y < size(); ++y) {
      if (meet(x, y) == x) pairs.emplace_back(x, y);
    }
  }
  return PartialOrderRelation(vertices_, pairs);
}

Lattice boolean_lattice(std::size_t dimension) {
  if (dimension > 10) throw Error(ErrorKind::TooLarge, "boolean lattice dimension limited to 10");
  const std::size_t n = std::size_t{1} << dimension;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) {
    std::string bits;
    for (std::size_t i = 0; i < dimension; ++i) bits += ((v >> i) & 1) ? '1' : '0';
    names.push_back(bits);
  }
  std::vector<Vertex> join(n * n);
  std::vector<Vertex> meet(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      join[x * n + y] = x | y;
      meet[x * n + y] = x & y;
    }
  }
  return Lattice(make_vertex_set(std::move(names)), std::move(join), std::move(meet));
}

HolleyResult holley_condition(const Measure& m1, const Measure& m2, const Lattice& lattice) {
  require_same_vertices(m1.vertex_set(), m2.vertex_set(), "holley_condition");
  require_same_vertices(m1.vertex_set(), lattice.vertex_set(), "holley_condition");
  for (Vertex v = 0; v < m1.size(); ++v) {
    if (sgn(m1[v]) <= 0 || sgn(m2[v]) <= 0) {
      throw Error(ErrorKind::NotStrictlyPositive,
                  "measures must be strictly positive; \"" + m1.vertex_set()->name(v) + "\" fails",
                  {v});
    }
  }
  const std::size_t n = lattice.size();
  for (Vertex eta = 0; eta < n; ++eta) {
    for (Vertex xi = 0; xi < n; ++xi) {
      if (m2[lattice.join(eta, xi)] * m1[lattice.meet(eta, xi)] < m2[eta] * m1[xi]) {
        return {false, std::make_pair(eta, xi)};
      }
    }
  }
  return {true, std::nullopt};
}

HolleySearchResult generalized_holley_search(const Measure& mu1, const Measure& mu2,
                                             const Lattice& lattice, std::size_t budget) {
  HolleySearchResult result;
  if (!dominates_oracle(mu1, mu2, lattice.order()).dominates) {
    result.dominance_prescreen_failed = true;
    return result;
  }
  auto d = difference(mu1, mu2);
  auto [plus, minus] = positive_negative_parts(d);
  const auto& vs = mu1.vertex_set();
  const std::size_t n = mu1.size();

  auto attempt = [&](const Measure& m) {
    if (result.candidates_tried >= budget) return false;
    ++result.candidates_tried;
    for (Vertex v = 0; v < n; ++v) {
      if (sgn(m[v]) <= 0) return false;
    }
    if (holley_condition(sum(plus, m), sum(minus, m), lattice).holds) {
      result.outcome = HolleySearchResult::Outcome::InArrowH;
      result.m = m;
      return true;
    }
    return false;
  };

  Measure base = pointwise_min(mu1, mu2);
  if (attempt(base)) return result;
  for (int k = -8; k <= 8 && result.candidates_tried < budget; ++k) {
    Rational c = pow2(k);
    if (attempt(Measure(vs, std::vector<Rational>(n, c)))) return result;
    for (int j = 0; j <= 12 && result.candidates_tried < budget; ++j) {
      Rational eps = pow2(-j);
      std::vector<Rational> w(n);
      for (Vertex v = 0; v < n; ++v) w[v] = c * (base[v] + eps);
      if (attempt(Measure(vs, std::move(w)))) return result;
    }
  }
  return result;
}

}  // namespace flowcouple
