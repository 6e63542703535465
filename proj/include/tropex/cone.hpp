#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "error.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "polyhedron.hpp"
#include "rational.hpp"

namespace tropex {

// Rational polyhedral cone with apex at the origin; both representations are kept by Polyhedron.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t dim, const std::vector<IntVector>& rays,
                              const std::vector<IntVector>& lineality = {}) {
    Cone c;
    c.poly_ = Polyhedron::from_vrep(dim, {RatVector(dim, Rational(0))}, rays, lineality);
    return c;
  }

  // {x : n · x >= 0 for each normal}
  static Cone from_normals(std::size_t dim, const std::vector<IntVector>& normals,
                           const std::vector<IntVector>& equations = {}) {
    std::vector<Halfspace> hs, eqs;
    for (const auto& n : normals) hs.push_back({Rational(0), n});
    for (const auto& n : equations) eqs.push_back({Rational(0), n});
    Cone c;
    c.poly_ = Polyhedron::from_hrep(dim, hs, eqs);
    return c;
  }

  static Cone from_polyhedron(const Polyhedron& p) {
    if (p.is_empty() || !p.contains(RatVector(p.dim(), Rational(0))))
      fail(ErrorCode::InvalidArgument, "polyhedron is not a cone");
    for (const auto& h : p.inequalities())
      if (h.offset != 0) fail(ErrorCode::InvalidArgument, "polyhedron is not a cone");
    Cone c;
    c.poly_ = p;
    return c;
  }

  std::size_t dim() const { return poly_.dim(); }
  const Polyhedron& polyhedron() const { return poly_; }
  const std::vector<IntVector>& rays() const { return poly_.rays(); }
  const std::vector<IntVector>& lineality() const { return poly_.lineality(); }
  bool is_pointed() const { return poly_.is_pointed(); }
  int cone_dim() const { return poly_.affine_dim(); }

  bool contains(const IntVector& x) const { return poly_.contains(to_rational(x)); }
  bool contains(const RatVector& x) const { return poly_.contains(x); }

  friend bool operator==(const Cone& a, const Cone& b) { return a.poly_ == b.poly_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.poly_ < b.poly_; }

 private:
  Polyhedron poly_ = Polyhedron::from_vrep(0, {RatVector{}});
};

namespace detail {

// Simplicial cones covering a pointed cone, each given by linearly independent rays.
inline std::vector<std::vector<IntVector>> triangulate(const Polyhedron& cone) {
  const auto& rays = cone.rays();
  std::size_t k = static_cast<std::size_t>(cone.affine_dim());
  if (rays.size() == k) return {rays};
  const IntVector& apex = rays[0];
  std::vector<std::vector<IntVector>> out;
  for (const auto& h : cone.inequalities()) {
    if (dot(h.normal, apex) == 0) continue;
    std::vector<IntVector> facetRays;
    for (const auto& r : rays)
      if (dot(h.normal, r) == 0) facetRays.push_back(r);
    Polyhedron facet = Polyhedron::from_vrep(cone.dim(), {RatVector(cone.dim(), Rational(0))}, facetRays);
    for (auto simplex : triangulate(facet)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

// Lattice points of {sum l_i g_i : 0 <= l_i < 1} for independent integer generators g.
inline std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& gens, std::size_t dim) {
  std::size_t k = gens.size();
  std::vector<IntVector> basis = saturate(gens, dim);
  RatMatrix B(dim, RatVector(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < dim; ++i) B[i][j] = basis[j][i];
  IntMatrix G(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto y = solve(B, to_rational(gens[j]), k);
    for (std::size_t i = 0; i < k; ++i) G(i, j) = (*y)[i].get_num();
  }
  SmithForm s = smith_normal_form(G);
  IntVector d = s.invariant_factors();
  std::vector<IntVector> out;
  IntVector c(k, Integer(0));
  while (true) {
    // lambda = V D^{-1} c, reduced into [0,1)
    RatVector lambda(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lambda[i] += s.V(i, j) * Rational(c[j], d[j]);
    RatVector p(dim, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
      lambda[i].canonicalize();
      Rational frac = lambda[i] - Rational(floor_of(lambda[i]));
      for (std::size_t t = 0; t < dim; ++t) p[t] += frac * gens[i][t];
    }
    IntVector pi(dim);
    for (std::size_t t = 0; t < dim; ++t) pi[t] = p[t].get_num();
    out.push_back(std::move(pi));
    std::size_t i = 0;
    while (i < k) {
      c[i] += 1;
      if (c[i] < d[i]) break;
      c[i] = 0;
      ++i;
    }
    if (i == k) break;
  }
  return out;
}

}  // namespace detail

// Minimal generating set of the monoid of lattice points of a pointed cone.
inline std::vector<IntVector> hilbert_basis(const Cone& cone) {
  if (cone.dim() > 3) fail(ErrorCode::DimTooLarge, "hilbert basis supports ambient dimension at most 3");
  if (!cone.is_pointed()) fail(ErrorCode::NotPointed, "cone contains a line");
  if (cone.rays().empty()) return {};
  std::set<IntVector> candidates;
  for (const auto& simplex : detail::triangulate(cone.polyhedron())) {
    for (const auto& g : simplex) candidates.insert(g);
    for (auto& p : detail::parallelepiped_points(simplex, cone.dim()))
      if (!is_zero(p)) candidates.insert(std::move(p));
  }
  std::vector<IntVector> out;
  for (const auto& x : candidates) {
    bool reducible = false;
    for (const auto& y : candidates) {
      if (y == x) continue;
      IntVector diff(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
      if (!is_zero(diff) && cone.contains(diff)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

}  // namespace tropex
