#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charts.hpp"
#include "complex.hpp"
#include "error.hpp"
#include "hull.hpp"
#include "lattice.hpp"
#include "polyhedron.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "semiring.hpp"

namespace tropex {

// c t^a z^alpha
struct Term {
  GaussianRational c;
  Rational a;
  IntVector alpha;

  friend bool operator==(const Term& x, const Term& y) { return x.c == y.c && x.a == y.a && x.alpha == y.alpha; }
};

class ExplodedPolynomial {
 public:
  ExplodedPolynomial() = default;

  // Terms sharing an exponent vector and offset are added; terms cancelling to zero are dropped.
  ExplodedPolynomial(std::size_t m, const std::vector<Term>& terms) : m_(m) {
    std::map<IntVector, Term> merged;
    for (const auto& t : terms) {
      if (t.alpha.size() != m)
        fail(ErrorCode::DimensionMismatch, "term has " + std::to_string(t.alpha.size()) + " exponents, expected " +
                                               std::to_string(m));
      auto it = merged.find(t.alpha);
      if (it == merged.end()) {
        merged.emplace(t.alpha, t);
        continue;
      }
      if (it->second.a != t.a) fail(ErrorCode::DuplicateExponentConflict, "monomial " + monomial_name(t.alpha) +
                                                                               " appears with t^" + to_string(it->second.a) +
                                                                               " and t^" + to_string(t.a));
      it->second.c += t.c;
    }
    for (auto& [alpha, t] : merged)
      if (!t.c.is_zero()) terms_.push_back(std::move(t));
  }

  std::size_t m() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Tropical value of term i at x.
  Rational term_value(std::size_t i, const RatVector& x) const { return terms_[i].a + dot(terms_[i].alpha, x); }

  std::vector<std::size_t> argmin(const RatVector& x) const {
    std::vector<std::size_t> out;
    std::optional<Rational> best;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      Rational v = term_value(i, x);
      if (!best || v < *best) {
        best = v;
        out.clear();
      }
      if (v == *best) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const ExplodedPolynomial& a, const ExplodedPolynomial& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }

  static std::string monomial_name(const IntVector& alpha) {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] != 0) s += "z" + std::to_string(i + 1) + (alpha[i] == 1 ? "" : "^" + to_string(alpha[i]));
    return s.empty() ? "1" : s;
  }

 private:
  std::size_t m_ = 0;
  std::vector<Term> terms_;
};

inline ExplodedValue evaluate(const ExplodedPolynomial& f, const ChartPoint& p) {
  if (p.expCoords.size() != f.m())
    fail(ErrorCode::DimensionMismatch, "point has " + std::to_string(p.expCoords.size()) + " coordinates, polynomial has " +
                                           std::to_string(f.m()) + " variables");
  if (f.empty()) fail(ErrorCode::InvalidArgument, "cannot evaluate the empty polynomial");
  ExplodedValue acc = eval_monomial(p, f.terms()[0].c, f.terms()[0].a, f.terms()[0].alpha);
  for (std::size_t i = 1; i < f.size(); ++i) acc = acc + eval_monomial(p, f.terms()[i].c, f.terms()[i].a, f.terms()[i].alpha);
  return acc;
}

inline bool in_zero_locus(const ExplodedPolynomial& f, const ChartPoint& p) { return evaluate(f, p).coeff.is_zero(); }

// x ↦ min over pieces of (a + alpha · x)
struct TropicalPLFunction {
  std::size_t m = 0;
  std::vector<std::pair<Rational, IntVector>> pieces;

  Rational operator()(const RatVector& x) const {
    if (pieces.empty()) fail(ErrorCode::InvalidArgument, "tropical function with no pieces");
    Rational best = pieces[0].first + dot(pieces[0].second, x);
    for (const auto& [a, alpha] : pieces) best = std::min(best, Rational(a + dot(alpha, x)));
    return best;
  }
};

inline TropicalPLFunction tropicalize(const ExplodedPolynomial& f) {
  TropicalPLFunction out;
  out.m = f.m();
  for (const auto& t : f.terms()) out.pieces.emplace_back(t.a, t.alpha);
  return out;
}

inline AffinePolytope newton_polytope(const ExplodedPolynomial& f) {
  if (f.m() > 3) fail(ErrorCode::DimTooLarge, "newton polytope supports at most 3 variables");
  if (f.empty()) fail(ErrorCode::InvalidArgument, "empty polynomial has no newton polytope");
  std::vector<IntVector> pts;
  for (const auto& t : f.terms()) pts.push_back(t.alpha);
  return convex_hull(pts).polytope();
}

namespace detail {

// {x in ambient : terms in T tie for the minimum}
inline Polyhedron argmin_region(const ExplodedPolynomial& f, const Polyhedron& ambient,
                                const std::vector<std::size_t>& T) {
  std::vector<Halfspace> ineqs = ambient.inequalities(), eqs = ambient.equations();
  const Term& t0 = f.terms()[T[0]];
  auto diff = [&](const Term& u) {
    IntVector n(f.m());
    for (std::size_t i = 0; i < f.m(); ++i) n[i] = u.alpha[i] - t0.alpha[i];
    return Halfspace{u.a - t0.a, n};
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == T[0]) continue;
    if (std::binary_search(T.begin(), T.end(), i))
      eqs.push_back(diff(f.terms()[i]));
    else
      ineqs.push_back(diff(f.terms()[i]));
  }
  return Polyhedron::from_hrep(f.m(), ineqs, eqs);
}

struct ArgminCell {
  std::vector<std::size_t> terms;
  Polyhedron region;
};

// Every closed set of at least minSize terms that attains the minimum together somewhere in ambient.
inline std::vector<ArgminCell> argmin_cells(const ExplodedPolynomial& f, const Polyhedron& ambient,
                                            std::size_t minSize) {
  std::map<std::vector<std::size_t>, Polyhedron> found;
  std::vector<std::vector<std::size_t>> queue;
  auto visit = [&](const std::vector<std::size_t>& T) {
    Polyhedron r = argmin_region(f, ambient, T);
    if (r.is_empty()) return;
    std::vector<std::size_t> closed = f.argmin(r.relint_point());
    if (found.count(closed)) return;
    found.emplace(closed, r);
    queue.push_back(closed);
  };
  if (minSize <= 1)
    for (std::size_t i = 0; i < f.size(); ++i) visit({i});
  else
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) visit({i, j});
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::vector<std::size_t> T = queue[q];
    for (std::size_t u = 0; u < f.size(); ++u) {
      if (std::binary_search(T.begin(), T.end(), u)) continue;
      std::vector<std::size_t> next = T;
      next.insert(std::upper_bound(next.begin(), next.end(), u), u);
      visit(next);
    }
  }
  std::vector<ArgminCell> out;
  for (auto& [T, r] : found) out.push_back({T, r});
  return out;
}

inline Integer lattice_length(const ExplodedPolynomial& f, const std::vector<std::size_t>& T) {
  const IntVector& base = f.terms()[T[0]].alpha;
  std::vector<IntVector> diffs;
  for (auto i : T) {
    IntVector d(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) d[k] = f.terms()[i].alpha[k] - base[k];
    diffs.push_back(d);
  }
  IntVector u;
  for (const auto& d : diffs)
    if (!is_zero(d)) {
      u = primitive(d);
      break;
    }
  if (u.empty()) return 0;
  std::size_t k = 0;
  while (u[k] == 0) ++k;
  Integer lo = 0, hi = 0;
  for (const auto& d : diffs) {
    Integer lambda = d[k] / u[k];
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  return hi - lo;
}

inline bool is_segment(const ExplodedPolynomial& f, const std::vector<std::size_t>& T) {
  std::vector<IntVector> pts;
  for (auto i : T) pts.push_back(f.terms()[i].alpha);
  RatMatrix diffs;
  for (const auto& p : pts) {
    RatVector d(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) d[k] = p[k] - pts[0][k];
    diffs.push_back(d);
  }
  return rank(diffs, f.m()) == 1;
}

}  // namespace detail

struct SubdivisionCell {
  std::vector<std::size_t> terms;  // indices into the polynomial's terms lying on the cell
  AffinePolytope polytope;
};

// Maximal cells of the subdivision of the Newton polytope induced by the offsets a.
inline std::vector<SubdivisionCell> regular_subdivision(const ExplodedPolynomial& f) {
  if (f.m() > 3) fail(ErrorCode::DimTooLarge, "regular subdivision supports at most 3 variables");
  newton_polytope(f);
  std::vector<SubdivisionCell> out;
  for (const auto& cell : detail::argmin_cells(f, Polyhedron::whole_space(f.m()), 1)) {
    if (cell.region.affine_dim() != 0) continue;
    std::vector<IntVector> pts;
    for (auto i : cell.terms) pts.push_back(f.terms()[i].alpha);
    out.push_back({cell.terms, convex_hull(pts).polytope()});
  }
  return out;
}

// Cells where the minimum is attained at least twice, with lattice-length weights on codimension-one cells.
inline WeightedComplex corner_locus(const ExplodedPolynomial& f, const AffinePolytope& ambient) {
  if (f.m() > 3) fail(ErrorCode::DimTooLarge, "corner locus supports at most 3 variables");
  if (ambient.dim() != f.m()) fail(ErrorCode::DimensionMismatch, "ambient polytope dimension differs from variable count");
  std::vector<Polyhedron> cells;
  std::vector<Integer> weights;
  for (const auto& c : detail::argmin_cells(f, ambient.closure(), 2)) {
    cells.push_back(c.region);
    weights.push_back(detail::is_segment(f, c.terms) ? detail::lattice_length(f, c.terms) : Integer(0));
  }
  return PolyhedralComplex::from_maximal(f.m(), cells, weights);
}

inline WeightedComplex corner_locus(const ExplodedPolynomial& f) {
  return corner_locus(f, AffinePolytope::whole_space(f.m()));
}

struct BalanceReport {
  bool balanced = true;
  std::optional<std::size_t> cell;  // the codimension-one face where balancing fails
  IntVector residual;
  std::string message;
};

// Around every cell of dimension top-1, the weighted primitive outgoing directions of the
// top-dimensional cells containing it sum to zero modulo the cell's own lattice.
inline BalanceReport is_balanced(const WeightedComplex& w) {
  if (w.is_abstract()) fail(ErrorCode::UnsupportedDimension, "balancing needs a complex in a single ambient space");
  int k = w.top_dim();
  std::size_t m = w.ambient_dim();
  if (k < 1) return {};
  if (!(k == 1 || static_cast<std::size_t>(k) + 1 == m))
    fail(ErrorCode::UnsupportedDimension, "balancing is checked for curves and for codimension-one complexes only");
  for (auto g : w.cells_of_dim(k - 1)) {
    const Polyhedron& G = w.cell(g);
    std::vector<IntVector> span;
    const auto& vs = G.vertices();
    for (std::size_t i = 1; i < vs.size(); ++i) {
      RatVector d(m);
      for (std::size_t j = 0; j < m; ++j) d[j] = vs[i][j] - vs[0][j];
      span.push_back(primitive(d));
    }
    for (const auto& r : G.rays()) span.push_back(r);
    for (const auto& l : G.lineality()) span.push_back(l);
    IntMatrix Q = quotient_map(span, m);
    RatVector pg = G.relint_point();
    IntVector sum(Q.rows(), Integer(0));
    for (auto f : w.cofaces(g)) {
      const Polyhedron& F = w.cell(f);
      if (F.affine_dim() != k) continue;
      RatVector pf = F.relint_point();
      RatVector d(m);
      for (std::size_t j = 0; j < m; ++j) d[j] = pf[j] - pg[j];
      IntVector u = primitive(Q.apply(d));
      for (std::size_t j = 0; j < u.size(); ++j) sum[j] += w.weight(f) * u[j];
    }
    if (!is_zero(sum)) {
      std::string s;
      for (std::size_t j = 0; j < sum.size(); ++j) s += (j ? "," : "") + to_string(sum[j]);
      return {false, g, sum, "cell " + std::to_string(g) + " is unbalanced: weighted sum (" + s + ")"};
    }
  }
  return {};
}

}  // namespace tropex
