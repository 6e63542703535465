#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "semiring.hpp"

namespace tropex {

// ⌈t^a z^alpha⌉ with a minimal for alpha. Ordered by a, then by alpha descending.
struct SmoothMonomial {
  Rational a;
  IntVector alpha;

  friend bool operator==(const SmoothMonomial& x, const SmoothMonomial& y) { return x.a == y.a && x.alpha == y.alpha; }
  friend bool operator<(const SmoothMonomial& x, const SmoothMonomial& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.alpha > y.alpha;
  }
};

// prod zeta^lhs = smooth_part(t^constant) * prod zeta^rhs, with sum r_i (a_i, alpha_i) = (constant, 0).
struct Relation {
  IntVector r;
  Rational constant;

  IntVector lhs() const {
    IntVector out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] > 0 ? r[i] : Integer(0);
    return out;
  }
  IntVector rhs() const {
    IntVector out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] < 0 ? Integer(-r[i]) : Integer(0);
    return out;
  }

  friend bool operator==(const Relation& x, const Relation& y) { return x.r == y.r && x.constant == y.constant; }
};

// Minimal a with a + x · alpha >= 0 on the closure, or nullopt when alpha is unbounded below.
inline std::optional<Rational> minimal_offset(const AffinePolytope& p, const IntVector& alpha) {
  try {
    return Rational(-p.closure().minimize(alpha).value);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unbounded) return std::nullopt;
    throw;
  }
}

inline std::vector<SmoothMonomial> smooth_monomial_basis(const AffinePolytope& p) {
  if (p.dim() > 3) fail(ErrorCode::DimTooLarge, "smooth monomial basis supports dimension at most 3");
  const Polyhedron& q = p.closure();
  auto tightSets = q.face_tight_sets();
  int minDim = static_cast<int>(p.dim());
  std::vector<std::pair<Polyhedron, std::vector<std::size_t>>> faces;
  for (const auto& t : tightSets) {
    Polyhedron f = q.face(t);
    minDim = std::min(minDim, f.affine_dim());
    faces.emplace_back(std::move(f), t);
  }
  // each minimal face contributes the Hilbert basis of its inner normal cone
  std::set<SmoothMonomial> candidates;
  for (const auto& [f, t] : faces) {
    if (f.affine_dim() != minDim) continue;
    std::vector<IntVector> gens;
    for (auto i : t) gens.push_back(q.inequalities()[i].normal);
    RatVector x = f.relint_point();
    for (const auto& h : hilbert_basis(Cone::from_generators(p.dim(), gens))) candidates.insert({-dot(h, x), h});
  }
  std::vector<SmoothMonomial> out;
  for (const auto& c : candidates) {
    bool reducible = false;
    for (const auto& g : candidates) {
      if (g == c) continue;
      IntVector rest(c.alpha.size());
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = c.alpha[i] - g.alpha[i];
      if (is_zero(rest)) continue;
      auto ar = minimal_offset(p, rest);
      if (ar && c.a - g.a >= *ar) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(c);
  }
  return out;
}

inline std::vector<Relation> monomial_relations(const std::vector<SmoothMonomial>& basis) {
  if (basis.empty()) return {};
  std::size_t m = basis[0].alpha.size();
  IntMatrix A(m, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) A(i, j) = basis[j].alpha[i];
  std::vector<Relation> out;
  for (auto r : integer_kernel(A)) {
    Rational c = 0;
    for (std::size_t j = 0; j < r.size(); ++j) c += r[j] * basis[j].a;
    bool flip = c < 0;
    if (c == 0)
      for (const auto& x : r)
        if (x != 0) {
          flip = x < 0;
          break;
        }
    if (flip) {
      for (auto& x : r) x = -x;
      c = -c;
    }
    out.push_back({std::move(r), c});
  }
  return out;
}

// A point of R^n x T^m_P: real coordinates plus m exploded coordinates with nonzero coefficients.
struct ChartPoint {
  RatVector realCoords;
  std::vector<ExplodedValue> expCoords;

  RatVector tropical_part() const {
    RatVector x;
    for (const auto& e : expCoords) x.push_back(e.exponent);
    return x;
  }
};

inline ExplodedValue eval_monomial(const ChartPoint& p, const GaussianRational& c, const Rational& a,
                                   const IntVector& alpha) {
  if (alpha.size() != p.expCoords.size())
    fail(ErrorCode::DimensionMismatch, "monomial has " + std::to_string(alpha.size()) + " exponents but point has " +
                                           std::to_string(p.expCoords.size()) + " coordinates");
  ExplodedValue v(c, a);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const auto& z = p.expCoords[i];
    if (z.coeff.is_zero()) fail(ErrorCode::InvalidArgument, "chart point coordinate has zero coefficient");
    v = v * ExplodedValue(pow(z.coeff, alpha[i]), alpha[i] * z.exponent);
  }
  return v;
}

class Chart {
 public:
  Chart(std::size_t n, AffinePolytope p) : n_(n), polytope_(std::move(p)) {
    basis_ = smooth_monomial_basis(polytope_);
    relations_ = monomial_relations(basis_);
    strata_ = polytope_.strata();
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return polytope_.dim(); }
  std::size_t real_dimension() const { return n_ + 2 * polytope_.dim(); }
  const AffinePolytope& polytope() const { return polytope_; }
  const std::vector<SmoothMonomial>& basis() const { return basis_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<Stratum>& strata() const { return strata_; }

  void check_point(const ChartPoint& p) const {
    if (p.expCoords.size() != m() || p.realCoords.size() != n_)
      fail(ErrorCode::DimensionMismatch, "point does not match chart dimensions");
    for (const auto& z : p.expCoords)
      if (z.coeff.is_zero()) fail(ErrorCode::InvalidArgument, "chart point coordinate has zero coefficient");
    if (!polytope_.contains(p.tropical_part()))
      fail(ErrorCode::PointOutsidePolytope, "tropical part of the point lies outside the polytope");
  }

 private:
  std::size_t n_;
  AffinePolytope polytope_;
  std::vector<SmoothMonomial> basis_;
  std::vector<Relation> relations_;
  std::vector<Stratum> strata_;
};

inline std::vector<GaussianRational> smooth_part_coords(const ChartPoint& p, const Chart& chart) {
  chart.check_point(p);
  std::vector<GaussianRational> out;
  for (const auto& b : chart.basis()) out.push_back(smooth_part(eval_monomial(p, GaussianRational(1), b.a, b.alpha)));
  return out;
}

inline Stratum stratum_of_point(const ChartPoint& p, const Chart& chart) {
  chart.check_point(p);
  return chart.polytope().stratum_of(p.tropical_part());
}

}  // namespace tropex
