#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "cone.hpp"
#include "error.hpp"
#include "hull.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "polyhedron.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "troppoly.hpp"

namespace tropex {

// ---------------------------------------------------------------------------
// Normal crossing data

struct NCStratum {
  std::vector<std::string> divisors;
  std::string component;
  long count = 1;
};

struct NCConfiguration {
  std::vector<std::string> components;
  std::vector<std::string> divisors;
  std::vector<NCStratum> strata;
};

namespace detail {

inline std::string subset_name(const std::vector<std::string>& ds) {
  std::string s = "{";
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + ds[i];
  return s + "}";
}

}  // namespace detail

// One quadrant [0,inf)^k per copy of each k-fold intersection, glued along coordinate faces.
inline PolyhedralComplex explode_ncd(const NCConfiguration& cfg) {
  auto invalid = [](const std::string& msg) { fail(ErrorCode::InvalidConfiguration, msg); };
  std::map<std::string, std::size_t> divIndex;
  for (std::size_t i = 0; i < cfg.divisors.size(); ++i)
    if (!divIndex.emplace(cfg.divisors[i], i).second) invalid("divisor " + cfg.divisors[i] + " listed twice");
  std::set<std::string> comps;
  for (const auto& c : cfg.components)
    if (!comps.insert(c).second) invalid("component " + c + " listed twice");

  // (component, sorted divisor indices) -> count
  std::map<std::pair<std::string, std::vector<std::size_t>>, long> strata;
  for (const auto& s : cfg.strata) {
    if (!comps.count(s.component)) invalid("unknown component " + s.component);
    if (s.count < 1) invalid("stratum " + detail::subset_name(s.divisors) + " has count < 1");
    std::vector<std::size_t> idx;
    for (const auto& d : s.divisors) {
      auto it = divIndex.find(d);
      if (it == divIndex.end()) invalid("unknown divisor " + d);
      idx.push_back(it->second);
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      invalid("stratum " + detail::subset_name(s.divisors) + " repeats a divisor");
    if (!strata.emplace(std::make_pair(s.component, idx), s.count).second)
      invalid("stratum " + detail::subset_name(s.divisors) + " on " + s.component + " listed twice");
  }
  for (const auto& c : cfg.components) {
    auto key = std::make_pair(c, std::vector<std::size_t>{});
    auto it = strata.find(key);
    if (it == strata.end())
      strata.emplace(key, 1);
    else if (it->second != 1)
      invalid("the empty stratum of " + c + " must appear exactly once");
  }
  auto names = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(cfg.divisors[i]);
    return out;
  };
  // subset closure
  for (const auto& [key, count] : strata) {
    const auto& idx = key.second;
    std::size_t k = idx.size();
    for (unsigned long mask = 1; mask + 1 < (1UL << k); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1UL << b)) sub.push_back(idx[b]);
      if (!strata.count({key.first, sub}))
        invalid("stratum " + detail::subset_name(names(idx)) + " on " + key.first + " requires stratum " +
                detail::subset_name(names(sub)));
    }
  }

  std::vector<std::pair<std::pair<std::string, std::vector<std::size_t>>, long>> order(strata.begin(), strata.end());
  std::map<std::string, std::size_t> compOrder;
  for (std::size_t i = 0; i < cfg.components.size(); ++i) compOrder[cfg.components[i]] = i;
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const auto& [ca, ia] = a.first;
    const auto& [cb, ib] = b.first;
    if (compOrder[ca] != compOrder[cb]) return compOrder[ca] < compOrder[cb];
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    return ia < ib;
  });

  PolyhedralComplex out;
  std::map<std::pair<std::string, std::vector<std::size_t>>, std::vector<std::size_t>> cellsOf;
  for (const auto& [key, count] : order) {
    std::size_t k = key.second.size();
    AffinePolytope quadrant = AffinePolytope::orthant(k);
    for (long j = 0; j < count; ++j) {
      std::string label = key.first + ":" + detail::subset_name(names(key.second));
      if (count > 1) label += "#" + std::to_string(j);
      cellsOf[key].push_back(out.add_abstract_cell(quadrant.closure(), label));
    }
  }
  for (const auto& [key, count] : order) {
    const auto& idx = key.second;
    std::size_t k = idx.size();
    for (unsigned long mask = 0; mask + 1 < (1UL << k); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (1UL << b)) sub.push_back(idx[b]);
      const auto& faces = cellsOf[{key.first, sub}];
      long subCount = static_cast<long>(faces.size());
      if (subCount != 1 && subCount != count)
        invalid("cannot tell which copy of " + detail::subset_name(names(sub)) + " bounds each copy of " +
                detail::subset_name(names(idx)) + " on " + key.first);
      IntMatrix embed(k, sub.size());
      for (std::size_t c = 0; c < sub.size(); ++c) {
        std::size_t pos = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), sub[c]) - idx.begin());
        embed(pos, c) = 1;
      }
      const auto& cells = cellsOf[key];
      for (long j = 0; j < count; ++j)
        out.add_incidence({faces[subCount == 1 ? 0 : static_cast<std::size_t>(j)], cells[static_cast<std::size_t>(j)],
                           embed, RatVector(k, Rational(0))});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Toric fans

inline PolyhedralComplex make_fan(std::size_t dim, const std::vector<std::vector<IntVector>>& cones) {
  std::vector<Polyhedron> cells;
  for (const auto& rays : cones) cells.push_back(Cone::from_generators(dim, rays).polyhedron());
  return PolyhedralComplex::from_maximal(dim, cells);
}

// The fan is its own tropical part; optionally cross-checked against a moment polytope.
inline PolyhedralComplex explode_toric(const PolyhedralComplex& fan,
                                       const std::optional<AffinePolytope>& momentPolytope = std::nullopt) {
  if (fan.is_abstract()) fail(ErrorCode::NotAFan, "a fan must live in a single vector space");
  std::vector<Polyhedron> cells;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const Polyhedron& c = fan.cell(i);
    bool cone = !c.is_empty() && c.contains(RatVector(fan.ambient_dim(), Rational(0)));
    for (const auto& h : c.inequalities())
      if (h.offset != 0) cone = false;
    if (!cone) fail(ErrorCode::NotAFan, "cell " + std::to_string(i) + " is not a cone");
    cells.push_back(c);
  }
  PolyhedralComplex closed = PolyhedralComplex::from_maximal(fan.ambient_dim(), cells);
  if (auto bad = closed.intersection_violation())
    fail(ErrorCode::NotAFan, "cones " + std::to_string(bad->first) + " and " + std::to_string(bad->second) +
                                 " meet in a set that is not a face of both");
  if (momentPolytope) {
    PolyhedralComplex expected = normal_fan(*momentPolytope);
    if (expected.cells() != closed.cells())
      fail(ErrorCode::NotAFan, "fan differs from the normal fan of the moment polytope");
  }
  return closed;
}

// ---------------------------------------------------------------------------
// Refinement

// Subdivides the listed cells; cells without an entry are kept whole.
inline PolyhedralComplex refine(const PolyhedralComplex& complex,
                                const std::map<std::size_t, std::vector<Polyhedron>>& subdivisions) {
  if (complex.is_abstract())
    fail(ErrorCode::InvalidArgument, "refinement of abstract complexes is not supported");
  std::vector<std::size_t> maximal;
  for (std::size_t i = 0; i < complex.size(); ++i)
    if (complex.cofaces(i).empty()) maximal.push_back(i);
  for (const auto& [i, pieces] : subdivisions) {
    if (i >= complex.size()) fail(ErrorCode::InvalidSubdivision, "no cell " + std::to_string(i));
    if (!complex.cofaces(i).empty())
      fail(ErrorCode::InvalidSubdivision, "cell " + std::to_string(i) + " is not maximal");
    SubdivisionReport r = validate_subdivision(complex.cell(i), pieces);
    if (!r.valid) fail(ErrorCode::InvalidSubdivision, "cell " + std::to_string(i) + ": " + r.diagnostic);
  }
  auto piecesOf = [&](std::size_t i) {
    auto it = subdivisions.find(i);
    return it == subdivisions.end() ? std::vector<Polyhedron>{complex.cell(i)} : it->second;
  };
  // induced subdivisions of shared faces must agree
  for (std::size_t x = 0; x < maximal.size(); ++x)
    for (std::size_t y = x + 1; y < maximal.size(); ++y) {
      std::size_t i = maximal[x], j = maximal[y];
      Polyhedron shared = complex.cell(i).intersect(complex.cell(j));
      if (shared.is_empty()) continue;
      auto induced = [&](std::size_t c) {
        std::set<Polyhedron> out;
        for (const auto& p : piecesOf(c)) {
          Polyhedron q = p.intersect(shared);
          if (q.affine_dim() == shared.affine_dim()) out.insert(q);
        }
        return out;
      };
      if (induced(i) != induced(j))
        fail(ErrorCode::IncompatibleOnSharedFace,
             "subdivisions of cells " + std::to_string(i) + " and " + std::to_string(j) + " disagree on their common face");
    }
  std::vector<Polyhedron> cells;
  std::vector<Integer> weights;
  for (auto i : maximal)
    for (const auto& p : piecesOf(i)) {
      cells.push_back(p);
      weights.push_back(complex.weight(i));
    }
  return PolyhedralComplex::from_maximal(complex.ambient_dim(), cells, weights);
}

// ---------------------------------------------------------------------------
// Fiber products

// x ↦ linear · x + translation on a domain polytope.
struct IntegralAffineMap {
  AffinePolytope domain;
  IntMatrix linear;
  RatVector translation;

  std::size_t target_dim() const { return linear.rows(); }
};

struct FiberProduct {
  AffinePolytope polytope;  // in coordinates t, with (p, q) = base + directions · t
  RatVector base;
  IntMatrix directions;
  Integer multiplicity;
  bool zTransverse = false;
};

inline FiberProduct tropical_fiber_product(const IntegralAffineMap& f, const IntegralAffineMap& g,
                                           std::optional<IntMatrix> fLattice = std::nullopt,
                                           std::optional<IntMatrix> gLattice = std::nullopt) {
  std::size_t p = f.domain.dim(), q = g.domain.dim(), k = f.target_dim();
  if (g.target_dim() != k) fail(ErrorCode::DimensionMismatch, "maps have different targets");
  if (f.linear.cols() != p || g.linear.cols() != q || f.translation.size() != k || g.translation.size() != k)
    fail(ErrorCode::DimensionMismatch, "map shapes do not match their domains");
  IntMatrix A = fLattice.value_or(f.linear), B = gLattice.value_or(g.linear);
  if (A.rows() != k || A.cols() != p || B.rows() != k || B.cols() != q)
    fail(ErrorCode::DimensionMismatch, "lattice maps have the wrong shape");
  IntMatrix J(k, p + q);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < p; ++j) J(i, j) = A(i, j);
    for (std::size_t j = 0; j < q; ++j) J(i, p + j) = -B(i, j);
  }
  if (rank(J.to_rational(), p + q) < k) fail(ErrorCode::NotTransverse, "linear parts do not span the target");
  Integer mult = lattice_index(J.transposed());

  IntMatrix L(k, p + q);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < p; ++j) L(i, j) = f.linear(i, j);
    for (std::size_t j = 0; j < q; ++j) L(i, p + j) = -g.linear(i, j);
  }
  RatVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) rhs[i] = g.translation[i] - f.translation[i];
  auto base = solve(L.to_rational(), rhs, p + q);
  if (!base) fail(ErrorCode::NotTransverse, "maps have no common values");
  std::vector<IntVector> kernel = saturate(integer_kernel(L), p + q);
  std::size_t d = kernel.size();
  IntMatrix K = IntMatrix::from_columns(kernel, p + q);

  std::vector<Constraint> cs;
  auto pull = [&](const AffinePolytope& dom, std::size_t offset) {
    for (const auto& c : dom.constraints()) {
      Rational a = c.a;
      IntVector alpha(d, Integer(0));
      for (std::size_t j = 0; j < c.alpha.size(); ++j) {
        a += c.alpha[j] * (*base)[offset + j];
        for (std::size_t t = 0; t < d; ++t) alpha[t] += c.alpha[j] * K(offset + j, t);
      }
      cs.push_back({a, alpha, c.strict});
    }
  };
  pull(f.domain, 0);
  pull(g.domain, p);
  // constraints constant in t are either vacuous or make the fiber empty
  std::vector<Constraint> kept;
  for (const auto& c : cs) {
    if (is_zero(c.alpha)) {
      if (c.a < 0 || (c.a == 0 && c.strict)) fail(ErrorCode::InvalidPolytope, "fiber product is empty");
      continue;
    }
    kept.push_back(c);
  }
  AffinePolytope fiber(d, kept);
  return {std::move(fiber), *base, K, mult, mult == 1};
}

// ---------------------------------------------------------------------------
// Degeneration families

struct DegenerationFamily {
  std::size_t n = 0;
  std::vector<IntVector> S;
  std::vector<GaussianRational> coeffs;
  std::vector<Integer> v;
  std::vector<std::vector<std::size_t>> simplices;  // maximal cells of the lower hull, as indices into S

  ExplodedPolynomial polynomial_at(const Rational& w) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < S.size(); ++i) terms.push_back({coeffs[i], w * v[i], S[i]});
    return {n, terms};
  }

  // Terms c z^alpha with tropical exponent (v(alpha), alpha) in the variables (w, x).
  ExplodedPolynomial total_polynomial() const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < S.size(); ++i) {
      IntVector e{v[i]};
      e.insert(e.end(), S[i].begin(), S[i].end());
      terms.push_back({coeffs[i], Rational(0), e});
    }
    return {n + 1, terms};
  }
};

namespace detail {

inline std::vector<IntVector> lattice_points(const Polyhedron& p) {
  std::size_t n = p.dim();
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices()[0][i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  if (n == 0) return {IntVector{}};
  while (true) {
    if (p.contains(to_rational(x))) out.push_back(x);
    std::size_t i = 0;
    while (i < n) {
      if (x[i] < hi[i]) {
        x[i] += 1;
        break;
      }
      x[i] = lo[i];
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace detail

inline DegenerationFamily make_family(const std::vector<IntVector>& S, const std::vector<GaussianRational>& coeffs,
                                      const std::vector<Integer>& v) {
  if (S.empty()) fail(ErrorCode::InvalidArgument, "family needs at least one exponent");
  if (coeffs.size() != S.size() || v.size() != S.size())
    fail(ErrorCode::DimensionMismatch, "S, coeffs and v must have the same length");
  std::size_t n = S[0].size();
  if (n > 3) fail(ErrorCode::DimTooLarge, "families support at most 3 variables");
  std::set<IntVector> members;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].size() != n) fail(ErrorCode::DimensionMismatch, "exponents of different lengths");
    if (coeffs[i].is_zero()) fail(ErrorCode::InvalidArgument, "zero coefficient in family");
    if (!members.insert(S[i]).second)
      fail(ErrorCode::InvalidArgument, "exponent " + ExplodedPolynomial::monomial_name(S[i]) + " listed twice");
  }
  Polyhedron hull = convex_hull(S).poly;
  for (const auto& x : detail::lattice_points(hull))
    if (!members.count(x)) {
      std::string s;
      for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
      fail(ErrorCode::MissingLatticePoint, "lattice point (" + s + ") of the hull is not in S");
    }
  if (hull.affine_dim() != static_cast<int>(n)) fail(ErrorCode::InvalidPolytope, "hull of S is not full-dimensional");

  DegenerationFamily fam{n, S, coeffs, v, {}};
  ExplodedPolynomial lifted = fam.polynomial_at(Rational(1));
  // polynomial terms are sorted by exponent; map them back to positions in S
  std::map<IntVector, std::size_t> indexOf;
  for (std::size_t i = 0; i < S.size(); ++i) indexOf[S[i]] = i;
  auto cells = detail::argmin_cells(lifted, Polyhedron::whole_space(n), 1);
  std::set<std::size_t> onHull;
  for (const auto& c : cells)
    for (auto t : c.terms) onHull.insert(indexOf[lifted.terms()[t].alpha]);
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!onHull.count(i))
      fail(ErrorCode::NotConvexLift, "lift at " + ExplodedPolynomial::monomial_name(S[i]) + " lies above the lower hull");
  for (const auto& c : cells) {
    if (c.region.affine_dim() != 0) continue;
    std::vector<std::size_t> simplex;
    for (auto t : c.terms) simplex.push_back(indexOf[lifted.terms()[t].alpha]);
    std::sort(simplex.begin(), simplex.end());
    bool unimodular = simplex.size() == n + 1;
    if (unimodular) {
      IntMatrix M(n, n);
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t i = 0; i < n; ++i) M(i, j - 1) = S[simplex[j]][i] - S[simplex[0]][i];
      Integer det = determinant(M);
      unimodular = det == 1 || det == -1;
    }
    if (!unimodular) {
      std::string s;
      for (auto i : simplex) s += " " + ExplodedPolynomial::monomial_name(S[i]);
      fail(ErrorCode::NotUnimodular, "lower face with vertices" + s + " is not a unimodular simplex");
    }
    fam.simplices.push_back(std::move(simplex));
  }
  std::sort(fam.simplices.begin(), fam.simplices.end());
  return fam;
}

// Corner locus of the family over {w >= 0}, sliced at w = w0 and projected to x-space.
inline WeightedComplex family_fiber(const DegenerationFamily& fam, const Rational& w0) {
  if (w0 < 0) fail(ErrorCode::InvalidArgument, "fiber parameter must be nonnegative");
  ExplodedPolynomial total = fam.total_polynomial();
  std::size_t n = fam.n;
  IntVector e0(n + 1, Integer(0));
  e0[0] = 1;
  Polyhedron halfspace = Polyhedron::from_hrep(n + 1, {{Rational(0), e0}});
  Halfspace slice{-w0, e0};
  ExplodedPolynomial flat = fam.polynomial_at(Rational(0));
  std::map<IntVector, std::size_t> flatIndex;
  for (std::size_t i = 0; i < flat.size(); ++i) flatIndex[flat.terms()[i].alpha] = i;

  std::vector<Polyhedron> cells;
  std::vector<Integer> weights;
  for (const auto& c : detail::argmin_cells(total, halfspace, 2)) {
    Polyhedron cut = c.region.with_equations({slice});
    if (cut.is_empty() || total.argmin(cut.relint_point()) != c.terms) continue;
    std::vector<RatVector> vs;
    std::vector<IntVector> rs, ls;
    for (const auto& v : cut.vertices()) vs.emplace_back(v.begin() + 1, v.end());
    for (const auto& r : cut.rays()) rs.emplace_back(r.begin() + 1, r.end());
    for (const auto& l : cut.lineality()) ls.emplace_back(l.begin() + 1, l.end());
    cells.push_back(Polyhedron::from_vrep(n, vs, rs, ls));
    std::vector<std::size_t> T;
    for (auto t : c.terms) {
      const IntVector& e = total.terms()[t].alpha;
      T.push_back(flatIndex[IntVector(e.begin() + 1, e.end())]);
    }
    std::sort(T.begin(), T.end());
    weights.push_back(detail::is_segment(flat, T) ? detail::lattice_length(flat, T) : Integer(0));
  }
  return PolyhedralComplex::from_maximal(n, cells, weights);
}

struct PantsCensus {
  std::size_t simplices = 0;  // maximal cells of the lower hull
  std::size_t vertices = 0;
  std::size_t edges = 0;      // bounded one-dimensional cells
  std::size_t rays = 0;       // unbounded one-dimensional cells
};

inline PantsCensus pants_census(const DegenerationFamily& fam, const Rational& w) {
  if (w <= 0) fail(ErrorCode::InvalidArgument, "census needs a positive fiber parameter");
  WeightedComplex fiber = family_fiber(fam, w);
  PantsCensus out;
  out.simplices = fam.simplices.size();
  out.vertices = fiber.cells_of_dim(0).size();
  for (auto i : fiber.cells_of_dim(1)) {
    if (fiber.cell(i).is_bounded())
      ++out.edges;
    else
      ++out.rays;
  }
  return out;
}

}  // namespace tropex
