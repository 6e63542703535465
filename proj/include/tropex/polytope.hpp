#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "polyhedron.hpp"
#include "rational.hpp"

namespace tropex {

// a + x · alpha >= 0, or > 0 when strict.
struct Constraint {
  Rational a;
  IntVector alpha;
  bool strict = false;

  friend bool operator==(const Constraint& x, const Constraint& y) {
    return x.a == y.a && x.alpha == y.alpha && x.strict == y.strict;
  }
};

// A face of the closure of a polytope. `tight` lists the polytope constraints that vanish on it.
struct Face {
  Polyhedron poly;
  std::vector<std::size_t> tight;
  RatVector relint;

  int dim() const { return poly.affine_dim(); }

  friend bool operator==(const Face& a, const Face& b) { return a.tight == b.tight && a.poly == b.poly; }
};

// Relative interior of a face not removed by strict constraints.
using Stratum = Face;

class AffinePolytope {
 public:
  AffinePolytope() : AffinePolytope(0, {}) {}

  AffinePolytope(std::size_t dim, std::vector<Constraint> constraints)
      : dim_(dim), constraints_(std::move(constraints)) {
    std::vector<Halfspace> hs;
    for (const auto& c : constraints_) {
      if (c.alpha.size() != dim_)
        fail(ErrorCode::DimensionMismatch, "constraint normal has length " + std::to_string(c.alpha.size()) +
                                               ", expected " + std::to_string(dim_));
      hs.push_back({c.a, c.alpha});
    }
    closure_ = Polyhedron::from_hrep(dim_, hs);
    if (closure_.affine_dim() != static_cast<int>(dim_)) fail(ErrorCode::InvalidPolytope, "polytope has empty interior");
  }

  static AffinePolytope whole_space(std::size_t dim) { return AffinePolytope(dim, {}); }

  // [0, inf)^dim
  static AffinePolytope orthant(std::size_t dim) {
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, Integer(0));
      e[i] = 1;
      cs.push_back({Rational(0), e, false});
    }
    return AffinePolytope(dim, cs);
  }

  static AffinePolytope from_polyhedron(const Polyhedron& p) {
    std::vector<Constraint> cs;
    for (const auto& h : p.inequalities()) cs.push_back({h.offset, h.normal, false});
    return AffinePolytope(p.dim(), cs);
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Polyhedron& closure() const { return closure_; }

  Rational value(std::size_t i, const RatVector& x) const {
    return constraints_[i].a + dot(constraints_[i].alpha, x);
  }

  bool contains(const RatVector& x) const {
    if (x.size() != dim_) fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      Rational v = value(i, x);
      if (v < 0 || (v == 0 && constraints_[i].strict)) return false;
    }
    return true;
  }

  std::vector<std::size_t> tight_at(const RatVector& x) const {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < constraints_.size(); ++i)
      if (value(i, x) == 0) t.push_back(i);
    return t;
  }

  // True iff no point of the closure is lost to a strict constraint.
  bool is_complete() const {
    for (const auto& c : constraints_) {
      if (!c.strict) continue;
      try {
        if (closure_.minimize(c.alpha).value + c.a <= 0) return false;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Unbounded) return false;
        throw;
      }
    }
    return true;
  }

  // Every face of the closure, ordered by dimension then tight set.
  std::vector<Face> faces() const {
    std::vector<Face> out;
    for (const auto& t : closure_.face_tight_sets()) {
      Polyhedron f = closure_.face(t);
      RatVector p = f.relint_point();
      out.push_back({f, tight_at(p), p});
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
      if (a.dim() != b.dim()) return a.dim() < b.dim();
      return a.tight < b.tight;
    });
    return out;
  }

  std::vector<Stratum> strata() const {
    std::vector<Stratum> out;
    for (auto& f : faces()) {
      bool removed = std::any_of(f.tight.begin(), f.tight.end(), [&](std::size_t i) { return constraints_[i].strict; });
      if (!removed) out.push_back(std::move(f));
    }
    return out;
  }

  Face face_of(const IntVector& alpha) const {
    if (alpha.size() != dim_) fail(ErrorCode::DimensionMismatch, "functional has wrong dimension");
    Polyhedron f = closure_.minimize(alpha).face;
    RatVector p = f.relint_point();
    return {f, tight_at(p), p};
  }

  Face face_with_tight_set(const std::vector<std::size_t>& tight) const {
    std::vector<Halfspace> eqs;
    for (auto i : tight) eqs.push_back({constraints_[i].a, constraints_[i].alpha});
    Polyhedron f = closure_.with_equations(eqs);
    if (f.is_empty()) fail(ErrorCode::NotAStratum, "constraint set does not define a face");
    RatVector p = f.relint_point();
    return {f, tight_at(p), p};
  }

  Stratum stratum_of(const RatVector& x) const {
    if (!contains(x)) fail(ErrorCode::PointOutsidePolytope, "point is not in the polytope");
    return face_with_tight_set(tight_at(x));
  }

  // Smallest stratum whose closure contains both.
  Stratum join(const Stratum& s, const Stratum& t) const {
    std::vector<std::size_t> common;
    std::set_intersection(s.tight.begin(), s.tight.end(), t.tight.begin(), t.tight.end(), std::back_inserter(common));
    return face_with_tight_set(common);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Constraint> constraints_;
  Polyhedron closure_;
};

inline std::vector<Stratum> strata_of(const AffinePolytope& p) { return p.strata(); }
inline Face face_of(const AffinePolytope& p, const IntVector& alpha) { return p.face_of(alpha); }
inline bool is_complete(const AffinePolytope& p) { return p.is_complete(); }

}  // namespace tropex
