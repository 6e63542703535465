#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include <tropex/complex.hpp>
#include <tropex/hull.hpp>
#include <tropex/polyhedron.hpp>
#include <tropex/polytope.hpp>

#include "support.hpp"

using namespace tropex;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

Constraint ge(long a, std::initializer_list<long> alpha, bool strict = false) { return {Rational(a), iv(alpha), strict}; }

AffinePolytope triangle() { return {2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(1, {-1, -1})}}; }
AffinePolytope interval(long l) { return {1, {ge(0, {1}), ge(l, {-1})}}; }
AffinePolytope square(long l) { return {2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(l, {-1, 0}), ge(l, {0, -1})}}; }

AffinePolytope intro_polytope() {
  return {3,
          {ge(1, {-1, 0, 0}), ge(1, {0, -1, 0}), ge(2, {1, 1, 0}), ge(0, {1, 1, -1}), ge(0, {0, 1, -1}),
           ge(0, {0, 0, -1})}};
}

std::set<IntVector> ray_set(const PolyhedralComplex& fan) {
  auto r = fan_rays(fan);
  return {r.begin(), r.end()};
}

// Facets of conv(points) by brute force: planes through affinely independent point tuples
// with every point on one side and at least dim points on the plane.
std::set<std::pair<IntVector, Rational>> brute_facets(const std::vector<RatVector>& pts) {
  std::size_t dim = pts[0].size();
  std::set<std::pair<IntVector, Rational>> out;
  std::vector<std::size_t> idx(dim);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
    if (k == dim) {
      RatMatrix rows;
      for (std::size_t j = 1; j < dim; ++j) {
        RatVector d(dim);
        for (std::size_t i = 0; i < dim; ++i) d[i] = pts[idx[j]][i] - pts[idx[0]][i];
        rows.push_back(d);
      }
      RatMatrix ns = nullspace(rows, dim);
      if (ns.size() != 1) return;
      IntVector n = primitive(ns[0]);
      for (int s : {1, -1}) {
        IntVector m = n;
        for (auto& x : m) x *= s;
        Rational b = -dot(m, pts[idx[0]]);
        bool ok = std::all_of(pts.begin(), pts.end(), [&](const RatVector& p) { return b + dot(m, p) >= 0; });
        if (ok) out.insert({m, b});
      }
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST(Polyhedron, VrepAndHrepAgree) {
  Polyhedron a = Polyhedron::from_vrep(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})});
  Polyhedron b = triangle().closure();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.vertices().size(), 3u);
  EXPECT_EQ(a.inequalities().size(), 3u);
}

TEST(Polyhedron, UnboundedAndLineality) {
  Polyhedron half = Polyhedron::from_hrep(2, {{Rational(0), iv({1, 0})}});
  EXPECT_FALSE(half.is_bounded());
  EXPECT_FALSE(half.is_pointed());
  EXPECT_EQ(half.lineality().size(), 1u);
  EXPECT_TRUE(half.contains(rv({3, -100})));
  EXPECT_FALSE(half.contains(rv({-1, 0})));
}

TEST(ConvexHull, Examples) {
  auto tri = convex_hull(std::vector<RatVector>{rv({0, 0}), rv({1, 0}), rv({0, 1})});
  EXPECT_EQ(tri.facets().size(), 3u);
  auto big = convex_hull(std::vector<RatVector>{rv({0, 0}), rv({2, 0}), rv({0, 2}), rv({1, 1})});
  EXPECT_EQ(big.vertices().size(), 3u);
  EXPECT_EQ(std::count(big.vertices().begin(), big.vertices().end(), rv({1, 1})), 0);
}

TEST(ConvexHull, IntroPolytopeFromVertices) {
  AffinePolytope p = intro_polytope();
  const Polyhedron& q = p.closure();
  auto hull = convex_hull(q.vertices(), q.rays());
  EXPECT_EQ(hull.poly, q);
  EXPECT_EQ(hull.facets().size(), 6u);
}

TEST(ConvexHull, RandomPointSetsAgainstBruteForce) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> d(-4, 4);
  int done = 0;
  while (done < 40) {
    std::size_t dim = 2 + rng() % 2;
    std::vector<RatVector> pts;
    for (int k = 0; k < 7; ++k) {
      RatVector p(dim);
      for (auto& x : p) x = d(rng);
      pts.push_back(p);
    }
    auto hull = convex_hull(pts);
    if (hull.poly.affine_dim() != static_cast<int>(dim)) continue;
    std::set<std::pair<IntVector, Rational>> got;
    for (const auto& h : hull.facets()) got.insert({primitive(h.normal), h.offset / content(h.normal)});
    ASSERT_EQ(got, brute_facets(pts));
    for (const auto& p : pts) ASSERT_TRUE(hull.poly.contains(p));
    ++done;
  }
}

TEST(ConvexHull, TooManyDimensions) {
  try {
    convex_hull(std::vector<RatVector>{RatVector(4, Rational(0))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimTooLarge);
  }
}

TEST(Polytope, StrataCounts) {
  EXPECT_EQ(strata_of(triangle()).size(), 7u);
  EXPECT_EQ(strata_of(AffinePolytope::orthant(1)).size(), 2u);
  EXPECT_EQ(strata_of(square(3)).size(), 9u);
  EXPECT_EQ(strata_of(AffinePolytope::whole_space(2)).size(), 1u);
  AffinePolytope open(1, {ge(0, {1}, true)});
  EXPECT_EQ(strata_of(open).size(), 1u);
}

TEST(Polytope, StrataPartitionRandomPoints) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> d(0, 12);
  for (const AffinePolytope& p : {triangle(), square(2), AffinePolytope::orthant(2)}) {
    auto strata = strata_of(p);
    int hits = 0;
    for (int t = 0; t < 300; ++t) {
      RatVector x{make_rational(d(rng) % 7, 4), make_rational(d(rng) % 7, 4)};
      if (!p.contains(x)) continue;
      int count = 0;
      for (const auto& s : strata)
        if (s.poly.contains_in_relint(x)) ++count;
      ASSERT_EQ(count, 1);
      ASSERT_EQ(p.stratum_of(x).tight, p.tight_at(x));
      ++hits;
    }
    EXPECT_GT(hits, 50);
  }
}

TEST(Polytope, IsComplete) {
  EXPECT_TRUE(is_complete(AffinePolytope::orthant(1)));
  EXPECT_FALSE(is_complete(AffinePolytope(1, {ge(0, {1}, true)})));
  EXPECT_TRUE(is_complete(AffinePolytope(1, {ge(0, {1}), ge(1, {1}, true)})));
}

TEST(Polytope, FaceOf) {
  AffinePolytope q = AffinePolytope::orthant(2);
  Face f = face_of(q, iv({1, 0}));
  EXPECT_EQ(f.tight, (std::vector<std::size_t>{0}));
  EXPECT_EQ(f.dim(), 1);
  EXPECT_EQ(face_of(q, iv({0, 0})).poly, q.closure());
  Face end = face_of(interval(5), iv({-1}));
  EXPECT_EQ(end.dim(), 0);
  EXPECT_EQ(end.poly.vertices()[0], rv({5}));
  EXPECT_THROW(face_of(q, iv({-1, 0})), Error);
}

TEST(Polytope, EmptyInteriorRejected) {
  try {
    AffinePolytope(1, {ge(0, {1}), ge(0, {-1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPolytope);
  }
}

TEST(Polytope, PointOutside) {
  try {
    triangle().stratum_of(rv({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointOutsidePolytope);
  }
}

TEST(NormalFan, IntroPolytope) {
  std::set<IntVector> want{iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, -1, 0}), iv({-1, -1, 1}), iv({0, -1, 1}), iv({0, 0, 1})};
  EXPECT_EQ(ray_set(normal_fan(intro_polytope())), want);
}

TEST(NormalFan, SquareAndTriangle) {
  EXPECT_EQ(ray_set(normal_fan(square(1))), (std::set<IntVector>{iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})}));
  EXPECT_EQ(ray_set(normal_fan(triangle())), (std::set<IntVector>{iv({-1, 0}), iv({0, -1}), iv({1, 1})}));
}

TEST(NormalFan, BoundedPolytopesGiveCompleteFans) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-9, 9);
  for (const AffinePolytope& p : {triangle(), square(2), AffinePolytope(2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(3, {-1, -2}), ge(2, {-1, 0})})}) {
    PolyhedralComplex fan = normal_fan(p);
    EXPECT_FALSE(fan.intersection_violation());
    for (int t = 0; t < 200; ++t) {
      RatVector x{Rational(d(rng)), Rational(d(rng))};
      int count = 0;
      for (auto i : fan.cells_of_dim(2))
        if (fan.cell(i).contains_in_relint(x)) ++count;
      bool onBoundary = count == 0;
      if (onBoundary) {
        ASSERT_TRUE(fan.support_contains(x));
      } else {
        ASSERT_EQ(count, 1);
      }
    }
  }
}

TEST(Subdivision, Examples) {
  EXPECT_TRUE(validate_subdivision(interval(2), {interval(1), AffinePolytope(1, {ge(-1, {1}), ge(2, {-1})})}).valid);
  auto bad = validate_subdivision(interval(2), {AffinePolytope(1, {ge(0, {1}), ge(3, {-2})}),
                                                AffinePolytope(1, {ge(-1, {1}), ge(2, {-1})})});
  EXPECT_FALSE(bad.valid);
  ASSERT_TRUE(bad.pair.has_value());
  EXPECT_EQ(*bad.pair, std::make_pair(std::size_t{0}, std::size_t{1}));
  EXPECT_FALSE(bad.diagnostic.empty());
  AffinePolytope q = AffinePolytope::orthant(2);
  AffinePolytope below(2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(0, {1, -1})});
  AffinePolytope above(2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(0, {-1, 1})});
  EXPECT_TRUE(validate_subdivision(q, {below, above}).valid);
}

TEST(Subdivision, Rejections) {
  EXPECT_FALSE(validate_subdivision(interval(2), {interval(1)}).valid);
  EXPECT_FALSE(validate_subdivision(interval(2), {interval(3)}).valid);
  EXPECT_FALSE(validate_subdivision(interval(2), {}).valid);
  AffinePolytope q = square(2);
  AffinePolytope left(2, {ge(0, {1, 0}), ge(0, {0, 1}), ge(1, {-1, 0}), ge(2, {0, -1})});
  AffinePolytope rightLow(2, {ge(-1, {1, 0}), ge(0, {0, 1}), ge(2, {-1, 0}), ge(1, {0, -1})});
  AffinePolytope rightHigh(2, {ge(-1, {1, 0}), ge(-1, {0, 1}), ge(2, {-1, 0}), ge(2, {0, -1})});
  EXPECT_FALSE(validate_subdivision(q, {left, rightLow, rightHigh}).valid);
  EXPECT_TRUE(validate_subdivision(square(1), {square(1)}).valid);
}
