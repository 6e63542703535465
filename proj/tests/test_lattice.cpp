#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include <tropex/cone.hpp>
#include <tropex/lattice.hpp>

using namespace tropex;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_diagonal_chain(const IntMatrix& D, std::size_t rank) {
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i != j && D(i, j) != 0) return false;
      if (i == j && i < rank && D(i, i) <= 0) return false;
      if (i == j && i >= rank && D(i, i) != 0) return false;
    }
  for (std::size_t i = 1; i < rank; ++i)
    if (D(i, i) % D(i - 1, i - 1) != 0) return false;
  return true;
}

// gcd of the maximal minors of a tall matrix (rows >= cols), by brute force over row subsets.
Integer gcd_of_maximal_minors(const IntMatrix& M) {
  std::size_t r = M.rows(), c = M.cols();
  Integer g = 0;
  std::function<void(std::size_t, std::vector<std::size_t>&)> rec = [&](std::size_t start, std::vector<std::size_t>& pick) {
    if (pick.size() == c) {
      IntMatrix sub(c, c);
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) sub(i, j) = M(pick[i], j);
      g = gcd(g, determinant(sub));
      return;
    }
    for (std::size_t i = start; i < r; ++i) {
      pick.push_back(i);
      rec(i + 1, pick);
      pick.pop_back();
    }
  };
  std::vector<std::size_t> pick;
  rec(0, pick);
  return abs(g);
}

std::vector<IntVector> box_points(std::size_t dim, int bound) {
  std::vector<IntVector> out;
  IntVector x(dim, Integer(-bound));
  while (true) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < dim && x[i] == bound) x[i++] = -bound;
    if (i == dim) break;
    ++x[i];
  }
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Brute force: every cone point in the box is an N-combination of the basis, and no basis
// element splits as a sum of two nonzero cone points.
void check_hilbert_basis(const Cone& cone, const std::vector<IntVector>& basis, int bound) {
  std::size_t dim = cone.dim();
  for (const auto& h : basis) ASSERT_TRUE(cone.contains(h));
  std::vector<IntVector> pts;
  for (const auto& x : box_points(dim, bound))
    if (cone.contains(x) && !is_zero(x)) pts.push_back(x);
  std::map<IntVector, bool> memo;
  std::function<bool(const IntVector&)> representable = [&](const IntVector& x) -> bool {
    if (is_zero(x)) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (const auto& h : basis) {
      IntVector y = sub(x, h);
      if (cone.contains(y) && representable(y)) {
        ok = true;
        break;
      }
    }
    memo[x] = ok;
    return ok;
  };
  for (const auto& x : pts) ASSERT_TRUE(representable(x));
  for (const auto& h : basis)
    for (const auto& g : pts) {
      IntVector rest = sub(h, g);
      ASSERT_FALSE(!is_zero(rest) && cone.contains(rest)) << "basis element is reducible";
    }
}

}  // namespace

TEST(Smith, RoundTripOnRandomMatrices) {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix M = random_matrix(rng, r, c, 6);
    SmithForm s = smith_normal_form(M);
    ASSERT_EQ(s.U * M * s.V, s.D);
    ASSERT_EQ(abs(determinant(s.U)), 1);
    ASSERT_EQ(abs(determinant(s.V)), 1);
    ASSERT_TRUE(is_diagonal_chain(s.D, s.rank));
  }
}

TEST(Smith, KnownInvariantFactors) {
  IntMatrix M = IntMatrix::from_rows({{Integer(2), Integer(4), Integer(4)},
                                      {Integer(-6), Integer(6), Integer(12)},
                                      {Integer(10), Integer(-4), Integer(-16)}});
  EXPECT_EQ(smith_normal_form(M).invariant_factors(), (IntVector{2, 6, 12}));
}

TEST(Lattice, IndexMatchesMinorGcdAndDeterminant) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t c = 1 + rng() % 3, r = c + rng() % 2;
    IntMatrix M = random_matrix(rng, r, c, 5);
    if (rank(M.to_rational(), c) < c) {
      EXPECT_THROW(lattice_index(M), Error);
      continue;
    }
    ASSERT_EQ(lattice_index(M), gcd_of_maximal_minors(M));
    if (r == c) {
      ASSERT_EQ(lattice_index(M), abs(determinant(M)));
    }
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Lattice, LatticeIndexExamples) {
  EXPECT_EQ(lattice_index(IntMatrix::from_rows({{Integer(2)}})), 2);
  EXPECT_EQ(lattice_index(IntMatrix::from_rows({{Integer(1), Integer(0)}, {Integer(0), Integer(3)}})), 3);
  try {
    lattice_index(IntMatrix::from_rows({{Integer(1), Integer(2)}, {Integer(2), Integer(4)}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Lattice, Saturation) {
  EXPECT_TRUE(is_saturated(IntMatrix::from_rows({{Integer(1)}, {Integer(1)}})));
  EXPECT_FALSE(is_saturated(IntMatrix::from_rows({{Integer(2)}, {Integer(0)}})));
  auto sat = saturate({{Integer(2), Integer(4)}}, 2);
  ASSERT_EQ(sat.size(), 1u);
  EXPECT_EQ(primitive(sat[0]), primitive(IntVector{Integer(1), Integer(2)}));
}

TEST(Lattice, IntegerKernel) {
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    IntMatrix A = random_matrix(rng, 2, 4, 4);
    auto K = integer_kernel(A);
    ASSERT_EQ(K.size(), 4 - rank(A.to_rational(), 4));
    for (const auto& k : K) ASSERT_TRUE(is_zero(A.apply(k)));
    if (!K.empty()) {
      ASSERT_TRUE(is_saturated(IntMatrix::from_columns(K, 4)));
    }
  }
}

TEST(Lattice, QuotientMap) {
  IntMatrix Q = quotient_map({{Integer(1), Integer(1), Integer(0)}}, 3);
  ASSERT_EQ(Q.rows(), 2u);
  EXPECT_TRUE(is_zero(Q.apply(IntVector{Integer(1), Integer(1), Integer(0)})));
  EXPECT_TRUE(is_saturated(Q.transposed()));
}

TEST(Hilbert, PlanarCones) {
  Cone c = Cone::from_generators(2, {{Integer(1), Integer(0)}, {Integer(1), Integer(3)}});
  auto hb = hilbert_basis(c);
  std::set<IntVector> got(hb.begin(), hb.end());
  std::set<IntVector> want{{Integer(1), Integer(0)}, {Integer(1), Integer(1)}, {Integer(1), Integer(2)}, {Integer(1), Integer(3)}};
  EXPECT_EQ(got, want);
  check_hilbert_basis(c, hb, 6);
}

TEST(Hilbert, NontrivialChartCone) {
  Cone c = Cone::from_generators(2, {{Integer(1), Integer(0)}, {Integer(1), Integer(2)}});
  auto hb = hilbert_basis(c);
  std::set<IntVector> got(hb.begin(), hb.end());
  EXPECT_EQ(got, (std::set<IntVector>{{Integer(1), Integer(0)}, {Integer(1), Integer(1)}, {Integer(1), Integer(2)}}));
}

TEST(Hilbert, NonUnimodularSpatialCone) {
  Cone c = Cone::from_generators(3, {{Integer(1), Integer(0), Integer(0)},
                                     {Integer(0), Integer(1), Integer(0)},
                                     {Integer(1), Integer(1), Integer(2)}});
  auto hb = hilbert_basis(c);
  std::set<IntVector> got(hb.begin(), hb.end());
  EXPECT_TRUE(got.count({Integer(1), Integer(1), Integer(1)}));
  check_hilbert_basis(c, hb, 4);
}

TEST(Hilbert, RandomConesAgainstBruteForce) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 25) {
    std::size_t dim = 2 + rng() % 2;
    std::vector<IntVector> gens;
    std::size_t count = dim + rng() % 2;
    for (std::size_t k = 0; k < count; ++k) {
      IntVector g(dim);
      for (auto& x : g) x = d(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    Cone c = Cone::from_generators(dim, gens);
    if (!c.is_pointed() || c.cone_dim() != static_cast<int>(dim)) continue;
    check_hilbert_basis(c, hilbert_basis(c), dim == 2 ? 7 : 4);
    ++done;
  }
}

TEST(Hilbert, Errors) {
  Cone line = Cone::from_generators(2, {{Integer(1), Integer(0)}, {Integer(-1), Integer(0)}});
  try {
    hilbert_basis(line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPointed);
  }
  Cone big = Cone::from_generators(4, {{Integer(1), Integer(0), Integer(0), Integer(0)}});
  try {
    hilbert_basis(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimTooLarge);
  }
}
