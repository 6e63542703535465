#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace tropex {

// offset + normal · x >= 0 (or == 0 when used as an equation).
struct Halfspace {
  Rational offset;
  IntVector normal;

  Rational value(const RatVector& x) const { return offset + dot(normal, x); }

  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.offset == b.offset && a.normal == b.normal;
  }
  friend bool operator<(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

namespace detail {

// Scales (n, b) by a positive factor so that n becomes a primitive integer vector.
inline Halfspace normalize_halfspace(const RatVector& n, const Rational& b) {
  Integer den = 1;
  for (const auto& x : n) den = lcm(den, x.get_den());
  IntVector in(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) in[i] = Rational(n[i] * den).get_num();
  Integer g = content(in);
  if (g == 0) return {b, in};
  for (auto& x : in) x /= g;
  Rational off = b * den / g;
  return {off, in};
}

// Canonical basis of a rational subspace: reduced echelon rows scaled to primitive integers.
inline std::vector<IntVector> canonical_subspace(const RatMatrix& rows, std::size_t dim) {
  RowEchelon e = rref(rows, dim);
  std::vector<IntVector> out;
  for (const auto& r : e.rows) out.push_back(primitive(r));
  return out;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct ConeGenerators {
  std::vector<IntVector> rays;  // extreme rays of the cone intersected with the lineality complement
  RatMatrix lineality;
};

// Generators of {y in R^D : A y >= 0, E y = 0}.
inline ConeGenerators cone_generators(std::size_t D, const RatMatrix& A, const RatMatrix& E) {
  RatMatrix all = A;
  all.insert(all.end(), E.begin(), E.end());
  ConeGenerators out;
  out.lineality = nullspace(all, D);

  RatMatrix base = E;
  base.insert(base.end(), out.lineality.begin(), out.lineality.end());
  std::size_t r0 = rank(base, D);
  if (r0 >= D) return out;
  std::size_t w = D - r0;

  // rows that are independent of the base and pairwise non-parallel
  std::vector<RatVector> rows;
  std::set<IntVector> seen;
  for (const auto& a : A) {
    IntVector p = primitive(a);
    if (is_zero(p) || seen.count(p)) continue;
    RatMatrix test = base;
    test.push_back(a);
    if (rank(test, D) == r0) continue;
    seen.insert(p);
    rows.push_back(to_rational(p));
  }

  std::set<IntVector> found;
  for_each_subset(rows.size(), w - 1, [&](const std::vector<std::size_t>& s) {
    RatMatrix m = base;
    for (auto i : s) m.push_back(rows[i]);
    RatMatrix ns = nullspace(m, D);
    if (ns.size() != 1) return;
    RatVector y = ns[0];
    bool pos = true, neg = true;
    for (const auto& a : rows) {
      int sg = sign(dot(a, y));
      if (sg < 0) pos = false;
      if (sg > 0) neg = false;
      if (!pos && !neg) return;
    }
    if (!pos)
      for (auto& x : y) x = -x;
    found.insert(primitive(y));
  });
  out.rays.assign(found.begin(), found.end());
  return out;
}

}  // namespace detail

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t dim) {
    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = true;
    return p;
  }

  static Polyhedron whole_space(std::size_t dim) { return from_hrep(dim, {}, {}); }

  static Polyhedron from_hrep(std::size_t dim, const std::vector<Halfspace>& ineqs,
                              const std::vector<Halfspace>& eqs = {}) {
    Polyhedron p;
    p.dim_ = dim;
    auto row = [dim](const Halfspace& h) {
      if (h.normal.size() != dim) fail(ErrorCode::DimensionMismatch, "halfspace normal has wrong length");
      RatVector r(dim + 1);
      for (std::size_t i = 0; i < dim; ++i) r[i] = h.normal[i];
      r[dim] = h.offset;
      return r;
    };
    RatMatrix A, E;
    for (const auto& h : ineqs) A.push_back(row(h));
    RatVector sRow(dim + 1, Rational(0));
    sRow[dim] = 1;
    A.push_back(sRow);
    for (const auto& h : eqs) E.push_back(row(h));
    detail::ConeGenerators g = detail::cone_generators(dim + 1, A, E);
    for (const auto& y : g.rays) {
      if (y[dim] > 0) {
        RatVector v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(y[i], y[dim]);
        for (auto& x : v) x.canonicalize();
        p.vertices_.push_back(std::move(v));
      } else {
        p.rays_.push_back(primitive(IntVector(y.begin(), y.begin() + static_cast<long>(dim))));
      }
    }
    if (p.vertices_.empty()) return empty(dim);
    RatMatrix lin;
    for (const auto& l : g.lineality) lin.push_back(RatVector(l.begin(), l.begin() + static_cast<long>(dim)));
    p.lineality_ = detail::canonical_subspace(lin, dim);
    p.compute_hrep();
    p.sort_vrep();
    return p;
  }

  static Polyhedron from_vrep(std::size_t dim, const std::vector<RatVector>& vertices,
                              const std::vector<IntVector>& rays = {}, const std::vector<IntVector>& lineality = {}) {
    if (vertices.empty()) return empty(dim);
    Polyhedron p;
    p.dim_ = dim;
    p.vertices_ = vertices;
    for (const auto& r : rays)
      if (!is_zero(r)) p.rays_.push_back(primitive(r));
    p.lineality_ = detail::canonical_subspace(to_rational(lineality), dim);
    p.compute_hrep();
    // recompute a canonical V-representation from the facets
    return from_hrep(dim, p.inequalities_, p.equations_);
  }

  std::size_t dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<Halfspace>& inequalities() const { return inequalities_; }
  const std::vector<Halfspace>& equations() const { return equations_; }

  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }
  bool is_pointed() const { return lineality_.empty(); }

  int affine_dim() const { return empty_ ? -1 : static_cast<int>(dim_ - equations_.size()); }

  bool contains(const RatVector& x) const {
    if (empty_) return false;
    for (const auto& h : equations_)
      if (h.value(x) != 0) return false;
    for (const auto& h : inequalities_)
      if (h.value(x) < 0) return false;
    return true;
  }

  bool contains_in_relint(const RatVector& x) const {
    if (!contains(x)) return false;
    for (const auto& h : inequalities_)
      if (h.value(x) == 0) return false;
    return true;
  }

  // Direction d is in the recession cone.
  bool recedes(const IntVector& d) const {
    for (const auto& h : equations_)
      if (dot(h.normal, d) != 0) return false;
    for (const auto& h : inequalities_)
      if (dot(h.normal, d) < 0) return false;
    return true;
  }

  bool contains(const Polyhedron& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    for (const auto& v : other.vertices_)
      if (!contains(v)) return false;
    for (const auto& r : other.rays_)
      if (!recedes(r)) return false;
    for (const auto& l : other.lineality_) {
      IntVector neg(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
      if (!recedes(l) || !recedes(neg)) return false;
    }
    return true;
  }

  RatVector relint_point() const {
    if (empty_) fail(ErrorCode::InvalidArgument, "empty polyhedron has no points");
    RatVector p(dim_, Rational(0));
    for (const auto& v : vertices_)
      for (std::size_t i = 0; i < dim_; ++i) p[i] += v[i];
    Rational n(static_cast<long>(vertices_.size()));
    for (auto& x : p) x /= n;
    for (const auto& r : rays_)
      for (std::size_t i = 0; i < dim_; ++i) p[i] += r[i];
    return p;
  }

  Polyhedron intersect(const Polyhedron& other) const {
    if (other.dim_ != dim_) fail(ErrorCode::DimensionMismatch, "intersecting polyhedra of different dimension");
    if (empty_ || other.empty_) return empty(dim_);
    std::vector<Halfspace> ineqs = inequalities_, eqs = equations_;
    ineqs.insert(ineqs.end(), other.inequalities_.begin(), other.inequalities_.end());
    eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
    return from_hrep(dim_, ineqs, eqs);
  }

  Polyhedron with_equations(const std::vector<Halfspace>& extra) const {
    if (empty_) return *this;
    std::vector<Halfspace> eqs = equations_;
    eqs.insert(eqs.end(), extra.begin(), extra.end());
    return from_hrep(dim_, inequalities_, eqs);
  }

  Polyhedron with_inequalities(const std::vector<Halfspace>& extra) const {
    if (empty_) return *this;
    std::vector<Halfspace> ineqs = inequalities_;
    ineqs.insert(ineqs.end(), extra.begin(), extra.end());
    return from_hrep(dim_, ineqs, equations_);
  }

  // Face where the facet inequalities with the given indices are tight.
  Polyhedron face(const std::vector<std::size_t>& tight) const {
    if (empty_) return *this;
    std::vector<RatVector> vs;
    std::vector<IntVector> rs;
    for (const auto& v : vertices_) {
      bool ok = true;
      for (auto i : tight)
        if (inequalities_[i].value(v) != 0) ok = false;
      if (ok) vs.push_back(v);
    }
    if (vs.empty()) return empty(dim_);
    for (const auto& r : rays_) {
      bool ok = true;
      for (auto i : tight)
        if (dot(inequalities_[i].normal, r) != 0) ok = false;
      if (ok) rs.push_back(r);
    }
    return from_vrep(dim_, vs, rs, lineality_);
  }

  // Indices of facet inequalities tight at x.
  std::vector<std::size_t> tight_set(const RatVector& x) const {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < inequalities_.size(); ++i)
      if (inequalities_[i].value(x) == 0) t.push_back(i);
    return t;
  }

  struct MinResult;

  // Minimizes c · x; throws Unbounded if the infimum is -infinity.
  MinResult minimize(const IntVector& c) const;

  // All nonempty faces, keyed by their sets of tight facet inequalities.
  std::vector<std::vector<std::size_t>> face_tight_sets() const {
    std::vector<std::vector<std::size_t>> out;
    if (empty_) return out;
    auto closure = [&](const std::vector<std::size_t>& t) -> std::optional<std::vector<std::size_t>> {
      std::vector<std::size_t> vs, rs;
      for (std::size_t j = 0; j < vertices_.size(); ++j) {
        bool ok = true;
        for (auto i : t)
          if (inequalities_[i].value(vertices_[j]) != 0) ok = false;
        if (ok) vs.push_back(j);
      }
      if (vs.empty()) return std::nullopt;
      for (std::size_t j = 0; j < rays_.size(); ++j) {
        bool ok = true;
        for (auto i : t)
          if (dot(inequalities_[i].normal, rays_[j]) != 0) ok = false;
        if (ok) rs.push_back(j);
      }
      std::vector<std::size_t> c;
      for (std::size_t i = 0; i < inequalities_.size(); ++i) {
        bool tight = true;
        for (auto j : vs)
          if (inequalities_[i].value(vertices_[j]) != 0) tight = false;
        for (auto j : rs)
          if (dot(inequalities_[i].normal, rays_[j]) != 0) tight = false;
        if (tight) c.push_back(i);
      }
      return c;
    };
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue{std::vector<std::size_t>{}};
    seen.insert({});
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::vector<std::size_t> t = queue[q];
      out.push_back(t);
      for (std::size_t i = 0; i < inequalities_.size(); ++i) {
        if (std::binary_search(t.begin(), t.end(), i)) continue;
        std::vector<std::size_t> next = t;
        next.insert(std::upper_bound(next.begin(), next.end(), i), i);
        auto c = closure(next);
        if (!c || seen.count(*c)) continue;
        seen.insert(*c);
        queue.push_back(*c);
      }
    }
    return out;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim_ != b.dim_ || a.empty_ != b.empty_) return false;
    if (a.empty_) return true;
    return a.vertices_ == b.vertices_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
    if (a.empty_ != b.empty_) return a.empty_;
    if (a.vertices_ != b.vertices_) return a.vertices_ < b.vertices_;
    if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
    return a.lineality_ < b.lineality_;
  }

 private:
  void compute_hrep() {
    std::size_t D = dim_ + 1;
    RatMatrix A, E;
    for (const auto& v : vertices_) {
      RatVector r(v.begin(), v.end());
      r.push_back(1);
      A.push_back(std::move(r));
    }
    for (const auto& ray : rays_) {
      RatVector r = to_rational(ray);
      r.push_back(0);
      A.push_back(std::move(r));
    }
    for (const auto& l : lineality_) {
      RatVector r = to_rational(l);
      r.push_back(0);
      E.push_back(std::move(r));
    }
    detail::ConeGenerators g = detail::cone_generators(D, A, E);
    inequalities_.clear();
    equations_.clear();
    for (const auto& y : g.rays) {
      RatVector n(y.begin(), y.begin() + static_cast<long>(dim_));
      if (is_zero(n)) continue;
      inequalities_.push_back(detail::normalize_halfspace(n, Rational(y[dim_])));
    }
    RowEchelon e = rref(g.lineality, D);
    for (const auto& r : e.rows) {
      RatVector n(r.begin(), r.begin() + static_cast<long>(dim_));
      equations_.push_back(detail::normalize_halfspace(n, r[dim_]));
    }
    std::sort(inequalities_.begin(), inequalities_.end());
  }

  void sort_vrep() {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(rays_.begin(), rays_.end());
  }

  std::size_t dim_ = 0;
  bool empty_ = false;
  std::vector<RatVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<Halfspace> inequalities_;
  std::vector<Halfspace> equations_;
};

struct Polyhedron::MinResult {
  Rational value;
  Polyhedron face;
};

inline Polyhedron::MinResult Polyhedron::minimize(const IntVector& c) const {
  if (empty_) fail(ErrorCode::InvalidArgument, "minimizing over an empty polyhedron");
  for (const auto& l : lineality_)
    if (dot(c, l) != 0) fail(ErrorCode::Unbounded, "functional is unbounded below along a lineality direction");
  for (const auto& r : rays_)
    if (dot(c, r) < 0) fail(ErrorCode::Unbounded, "functional is unbounded below along a ray");
  Rational best = dot(c, vertices_[0]);
  for (const auto& v : vertices_) best = std::min(best, dot(c, v));
  std::vector<RatVector> vs;
  std::vector<IntVector> rs;
  for (const auto& v : vertices_)
    if (dot(c, v) == best) vs.push_back(v);
  for (const auto& r : rays_)
    if (dot(c, r) == 0) rs.push_back(r);
  return {best, from_vrep(dim_, vs, rs, lineality_)};
}

}  // namespace tropex
