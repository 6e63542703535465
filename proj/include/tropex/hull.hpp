#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "complex.hpp"
#include "cone.hpp"
#include "error.hpp"
#include "polyhedron.hpp"
#include "polytope.hpp"
#include "rational.hpp"

namespace tropex {

struct ConvexHull {
  Polyhedron poly;

  const std::vector<Halfspace>& facets() const { return poly.inequalities(); }
  const std::vector<Halfspace>& equations() const { return poly.equations(); }
  const std::vector<RatVector>& vertices() const { return poly.vertices(); }

  // Throws InvalidPolytope when the hull is not full-dimensional.
  AffinePolytope polytope() const { return AffinePolytope::from_polyhedron(poly); }
};

inline ConvexHull convex_hull(const std::vector<RatVector>& points, const std::vector<IntVector>& rays = {}) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "convex hull of no points");
  std::size_t dim = points[0].size();
  if (dim > 3) fail(ErrorCode::DimTooLarge, "convex hull supports dimension at most 3");
  for (const auto& p : points)
    if (p.size() != dim) fail(ErrorCode::DimensionMismatch, "points of different dimension");
  return {Polyhedron::from_vrep(dim, points, rays)};
}

inline ConvexHull convex_hull(const std::vector<IntVector>& points) {
  std::vector<RatVector> pts;
  for (const auto& p : points) pts.push_back(to_rational(p));
  return convex_hull(pts);
}

// Outer normal cone of every face; rays are the primitive outer facet normals.
inline PolyhedralComplex normal_fan(const AffinePolytope& p) {
  if (p.dim() > 3) fail(ErrorCode::DimTooLarge, "normal fan supports dimension at most 3");
  const Polyhedron& q = p.closure();
  std::vector<Polyhedron> cones;
  for (const auto& t : q.face_tight_sets()) {
    std::vector<IntVector> gens;
    for (auto i : t) {
      IntVector n = q.inequalities()[i].normal;
      for (auto& x : n) x = -x;
      gens.push_back(n);
    }
    cones.push_back(Cone::from_generators(p.dim(), gens).polyhedron());
  }
  return PolyhedralComplex::from_maximal(p.dim(), cones);
}

// Distinct rays of all cones in a fan.
inline std::vector<IntVector> fan_rays(const PolyhedralComplex& fan) {
  std::set<IntVector> rays;
  for (const auto& c : fan.cells())
    for (const auto& r : c.rays()) rays.insert(r);
  return {rays.begin(), rays.end()};
}

}  // namespace tropex
