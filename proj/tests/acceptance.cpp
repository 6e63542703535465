#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <tropex/charts.hpp>
#include <tropex/cli/parse.hpp>
#include <tropex/geometry_ops.hpp>
#include <tropex/hull.hpp>
#include <tropex/semiring.hpp>
#include <tropex/strata_calculus.hpp>
#include <tropex/troppoly.hpp>

#include "support.hpp"

using namespace tropex;
using tropex::testing::random_smooth_poly;
using tropex::testing::random_value;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

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

Constraint ge(long a, std::initializer_list<long> alpha) { return {Rational(a), iv(alpha), false}; }

AffinePolytope nontrivial() { return {2, {ge(0, {1, 0}), ge(0, {1, 2})}}; }

AffinePolytope intro_polytope() {
  return {3, {ge(1, {-1, 0, 0}), ge(1, {0, -1, 0}), ge(2, {1, 1, 0}), ge(0, {1, 1, -1}), ge(0, {0, 1, -1}), ge(0, {0, 0, -1})}};
}

ExplodedPolynomial tropical_line() {
  GaussianRational one(1);
  return {2, {{one, Rational(0), iv({1, 0})}, {one, Rational(0), iv({0, 1})}, {one, Rational(0), iv({0, 0})}}};
}

const char* kNontrivialJson = R"({"dim":2,"constraints":[{"a":0,"alpha":[1,0]},{"a":0,"alpha":[1,2]}]})";
const char* kIntroJson =
    R"({"dim":3,"constraints":[{"a":1,"alpha":[-1,0,0]},{"a":1,"alpha":[0,-1,0]},{"a":2,"alpha":[1,1,0]},)"
    R"({"a":0,"alpha":[1,1,-1]},{"a":0,"alpha":[0,1,-1]},{"a":0,"alpha":[0,0,-1]}]})";

void semiring_laws(Check& c) {
  std::mt19937 rng(101);
  for (int i = 0; i < 1000 && c.ok; ++i) {
    ExplodedValue a = random_value(rng), b = random_value(rng), d = random_value(rng);
    c.require(exp_add(exp_add(a, b), d) == exp_add(a, exp_add(b, d)), "addition is not associative");
    c.require(exp_mul(exp_mul(a, b), d) == exp_mul(a, exp_mul(b, d)), "multiplication is not associative");
    c.require(exp_add(a, b) == exp_add(b, a), "addition is not commutative");
    c.require(exp_mul(a, b) == exp_mul(b, a), "multiplication is not commutative");
    c.require(exp_mul(a, exp_add(b, d)) == exp_add(exp_mul(a, b), exp_mul(a, d)), "distributivity fails");
  }
}

void homomorphisms(Check& c) {
  std::mt19937 rng(102);
  for (int i = 0; i < 1000 && c.ok; ++i) {
    ExplodedValue a = random_value(rng), b = random_value(rng);
    c.require(tropical_part(a + b) == tropical_part(a) + tropical_part(b), "tropical part does not respect addition");
    c.require(tropical_part(a * b) == tropical_part(a) * tropical_part(b), "tropical part does not respect product");
    a.exponent = abs(a.exponent);
    b.exponent = abs(b.exponent);
    c.require(smooth_part(a + b) == smooth_part(a) + smooth_part(b), "smooth part does not respect addition");
    c.require(smooth_part(a * b) == smooth_part(a) * smooth_part(b), "smooth part does not respect product");
  }
}

void nontrivial_basis(Check& c) {
  auto basis = smooth_monomial_basis(nontrivial());
  std::set<std::pair<Rational, IntVector>> got;
  for (const auto& b : basis) got.insert({b.a, b.alpha});
  c.require(got == std::set<std::pair<Rational, IntVector>>{{0, iv({1, 0})}, {0, iv({1, 1})}, {0, iv({1, 2})}},
            "basis differs");
  auto rels = monomial_relations(basis);
  c.require(rels.size() == 1, "expected exactly one relation");
  if (!c.ok) return;
  // z^(1,0) z^(1,2) = (z^(1,1))^2 with no t factor
  IntVector lhs(3, Integer(0)), rhs(3, Integer(0));
  for (std::size_t i = 0; i < 3; ++i) {
    if (basis[i].alpha == iv({1, 0}) || basis[i].alpha == iv({1, 2})) lhs[i] = 1;
    if (basis[i].alpha == iv({1, 1})) rhs[i] = 2;
  }
  const Relation& r = rels[0];
  c.require(r.constant == 0, "relation carries a t power");
  c.require((r.lhs() == lhs && r.rhs() == rhs) || (r.lhs() == rhs && r.rhs() == lhs), "relation differs");
}

void interval_basis(Check& c) {
  AffinePolytope p(1, {ge(0, {1}), ge(1, {-1})});
  auto basis = smooth_monomial_basis(p);
  c.require(basis == std::vector<SmoothMonomial>{{0, iv({1})}, {1, iv({-1})}}, "basis differs");
  auto rels = monomial_relations(basis);
  c.require(rels.size() == 1, "expected exactly one relation");
  if (!c.ok) return;
  c.require(rels[0].lhs() == iv({1, 1}) && is_zero(rels[0].rhs()), "relation is not z1 z2 = const");
  c.require(smooth_part(ExplodedValue(GaussianRational(1), rels[0].constant)) == GaussianRational(0),
            "relation constant has nonzero smooth part");
}

void tropical_line_check(Check& c) {
  ExplodedPolynomial f = tropical_line();
  WeightedComplex w = corner_locus(f);
  std::set<IntVector> dirs;
  for (auto i : w.cells_of_dim(1)) {
    c.require(w.weight(i) == 1, "ray weight is not 1");
    c.require(w.cell(i).rays().size() == 1, "one-cell is not a ray");
    if (!w.cell(i).rays().empty()) dirs.insert(primitive(w.cell(i).rays()[0]));
  }
  c.require(w.cells_of_dim(1).size() == 3, "expected 3 rays");
  c.require(dirs == std::set<IntVector>{iv({1, 0}), iv({0, 1}), iv({-1, -1})}, "ray directions differ");
  c.require(is_balanced(w).balanced, "not balanced");
  for (int i = 0; i <= 200 && c.ok; ++i)
    for (int j = 0; j <= 200 && c.ok; ++j) {
      RatVector x{make_rational(i - 100, 20), make_rational(j - 100, 20)};
      std::size_t ties = f.argmin(x).size();
      bool onLocus = ties >= 2;
      c.require(onLocus == w.support_contains(x), "support differs from scan");
      if (!onLocus) continue;
      std::size_t owners = 0;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (w.cell(k).contains_in_relint(x)) {
          ++owners;
          c.require(w.cell(k).affine_dim() == static_cast<int>(3 - ties), "cell dimension differs from scan");
        }
      c.require(owners == 1, "grid point not in exactly one open cell");
    }
}

void toric_duality(Check& c) {
  auto rays = fan_rays(normal_fan(intro_polytope()));
  std::set<IntVector> got(rays.begin(), rays.end());
  std::set<IntVector> want{iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, -1, 0}), iv({-1, -1, 1}), iv({0, -1, 1}), iv({0, 0, 1})};
  c.require(rays.size() == 6 && got == want, "ray set differs");
}

void fiber_products(Check& c) {
  IntegralAffineMap doubling{AffinePolytope::whole_space(1), IntMatrix::from_rows({iv({2})}), rv({0})};
  IntegralAffineMap point{AffinePolytope::whole_space(0), IntMatrix(1, 0), rv({0})};
  FiberProduct a = tropical_fiber_product(doubling, point);
  c.require(a.multiplicity == 2, "doubling multiplicity is not 2");
  c.require(!a.zTransverse, "doubling reported as Z-transverse");
  c.require(a.polytope.dim() == 0, "doubling fiber is not a point");
  IntegralAffineMap id{AffinePolytope::whole_space(1), IntMatrix::identity(1), rv({0})};
  FiberProduct b = tropical_fiber_product(id, id);
  c.require(b.multiplicity == 1, "identity multiplicity is not 1");
  c.require(b.zTransverse, "identity not Z-transverse");
}

SmoothPoly delta_or_self(const SmoothPoly& f, const std::vector<Stratum>& I, const Chart& chart) {
  return I.empty() ? f : delta_I(f, I, chart).polynomial();
}

void strata_algebra(Check& c) {
  std::mt19937 rng(108);
  for (std::size_t m : {2u, 3u}) {
    Chart chart(0, AffinePolytope::orthant(m));
    const auto& strata = chart.strata();
    std::size_t ns = strata.size();
    auto subset = [&](unsigned long mask) {
      std::vector<Stratum> out;
      for (std::size_t i = 0; i < ns; ++i)
        if (mask & (1UL << i)) out.push_back(strata[i]);
      return out;
    };
    std::vector<std::vector<bool>> vanish;
    for (const auto& s : strata) vanish.push_back(vanishing_set(s, chart));
    for (int t = 0; t < 100 && c.ok; ++t) {
      SmoothPoly f = random_smooth_poly(rng, m, 3, 4), g = random_smooth_poly(rng, m, 3, 4);
      for (const auto& s : strata) {
        SmoothPoly once = e_S(f, s, chart).polynomial();
        c.require(e_S(once, s, chart).polynomial() == once, "e_S is not idempotent");
        for (const auto& u : strata)
          c.require(e_S(once, u, chart).polynomial() == e_S(f, chart.polytope().join(s, u), chart).polynomial(),
                    "e_S e_T differs from e of the join");
      }
      std::vector<SmoothPoly> df(1UL << ns), dg(1UL << ns);
      for (unsigned long mask = 0; mask < (1UL << ns); ++mask) {
        df[mask] = delta_or_self(f, subset(mask), chart);
        dg[mask] = delta_or_self(g, subset(mask), chart);
      }
      SmoothPoly fg = f * g;
      for (unsigned long I = 1; I < (1UL << ns) && c.ok; ++I) {
        auto coll = subset(I);
        SmoothPoly lhs = delta_I(fg, coll, chart).polynomial();
        for (const auto& s : coll) c.require(e_S(lhs, s, chart).polynomial().is_zero(), "e_S Delta_I is not zero");
        SmoothPoly rhs(m);
        for (unsigned long sub = I;; sub = (sub - 1) & I) {
          std::vector<bool> gone(m, false);
          for (std::size_t i = 0; i < ns; ++i)
            if (sub & (1UL << i))
              for (std::size_t j = 0; j < m; ++j) gone[j] = gone[j] || vanish[i][j];
          rhs = rhs + df[I & ~sub].without(gone) * dg[sub];
          if (sub == 0) break;
        }
        c.require(lhs == rhs, "product expansion fails for " + detail::collection_label(coll));
      }
    }
  }
}

void delta_bounds(Check& c) {
  std::mt19937 rng(109);
  Chart chart(0, AffinePolytope::orthant(3));
  Region unit{{1.0, 1.0, 1.0}};
  auto collections = collections_up_to(nonzero_strata(chart), 3);
  std::size_t evaluated = 0;
  for (int t = 0; t < 20 && c.ok; ++t) {
    SmoothPoly f = random_smooth_poly(rng, 3, 4, 8);
    std::set<std::pair<SmoothPoly, std::vector<IntVector>>> seen;
    for (const auto& I : collections) {
      if (!seen.insert({delta_I(f, I, chart).polynomial(), weight_w_I(I, chart).generators}).second) continue;
      DeltaBound b = verify_delta_bound(f, I, chart, unit, 4);
      ++evaluated;
      c.require(std::isfinite(b.supRatio), "unbounded ratio for " + detail::collection_label(I));
      c.require(b.stable, "unstable under grid doubling for " + detail::collection_label(I) + ": " +
                              std::to_string(b.coarse) + " vs " + std::to_string(b.supRatio));
    }
  }
  c.require(evaluated > 0, "nothing evaluated");
}

DegenerationFamily dilated_family(long d) {
  std::vector<IntVector> S;
  std::vector<GaussianRational> coeffs;
  std::vector<Integer> v;
  for (long i = 0; i <= d; ++i)
    for (long j = 0; i + j <= d; ++j) {
      S.push_back(iv({i, j}));
      coeffs.emplace_back(1);
      v.emplace_back(i * i + j * j + i * j);
    }
  return make_family(S, coeffs, v);
}

void degenerations(Check& c) {
  for (long d = 1; d <= 3; ++d) {
    DegenerationFamily fam = dilated_family(d);
    c.require(pants_census(fam, 1).vertices == static_cast<std::size_t>(d * d), "vertex count is not d^2");
    std::vector<Term> unlifted;
    for (std::size_t i = 0; i < fam.S.size(); ++i) unlifted.push_back({fam.coeffs[i], Rational(0), fam.S[i]});
    c.require(family_fiber(fam, 0) == corner_locus(ExplodedPolynomial(2, unlifted)), "zero fiber differs");
    for (const Rational& w : {make_rational(1, 2), Rational(1), Rational(3)})
      c.require(is_balanced(family_fiber(fam, w)).balanced, "positive fiber unbalanced");
  }
}

void subdivisions(Check& c) {
  auto seg = [](long a, long b) { return Polyhedron::from_vrep(1, {rv({a}), rv({b})}); };
  c.require(validate_subdivision(seg(0, 2), {seg(0, 1), seg(1, 2)}).valid, "interval split rejected");
  Polyhedron quadrant = Cone::from_generators(2, {iv({1, 0}), iv({0, 1})}).polyhedron();
  Polyhedron lower = Cone::from_generators(2, {iv({1, 0}), iv({1, 1})}).polyhedron();
  Polyhedron upper = Cone::from_generators(2, {iv({1, 1}), iv({0, 1})}).polyhedron();
  c.require(validate_subdivision(quadrant, {lower, upper}).valid, "two-cone split rejected");
  Polyhedron wide = Polyhedron::from_vrep(1, {RatVector{Rational(0)}, RatVector{make_rational(3, 2)}});
  SubdivisionReport bad = validate_subdivision(seg(0, 2), {wide, seg(1, 2)});
  c.require(!bad.valid, "overlapping split accepted");
  c.require(bad.pair == std::make_pair(std::size_t{0}, std::size_t{1}), "offending pair not named");
  c.require(!bad.diagnostic.empty(), "empty diagnostic");
}

void parser_and_cli(Check& c) {
  std::mt19937 rng(112);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), ex(-3, 3), count(1, 5), vars(1, 3), imag(0, 2);
  int checked = 0;
  while (checked < 200 && c.ok) {
    std::size_t m = static_cast<std::size_t>(vars(rng));
    std::vector<Term> terms;
    for (int j = count(rng); j > 0; --j) {
      GaussianRational co(make_rational(num(rng), den(rng)), imag(rng) == 0 ? make_rational(num(rng), den(rng)) : Rational(0));
      if (co.is_zero()) co = GaussianRational(1);
      IntVector alpha(m);
      for (auto& x : alpha) x = ex(rng);
      terms.push_back({co, make_rational(num(rng), den(rng)), alpha});
    }
    ExplodedPolynomial f;
    try {
      f = ExplodedPolynomial(m, terms);
    } catch (const Error&) {
      continue;
    }
    std::string text = cli::print_polynomial(f);
    c.require(cli::parse_polynomial(text, m) == f, "round trip failed for " + text);
    ++checked;
  }
  using tropex::testing::shell_quote;
  std::string bin = TROPEX_BIN;
  std::vector<std::string> runs{bin + " basis --polytope " + shell_quote(kNontrivialJson),
                                bin + " hypersurface " + shell_quote("z1 + z2 + 1"),
                                bin + " explode-toric --polytope " + shell_quote(kIntroJson)};
  for (const auto& cmd : runs) {
    auto first = tropex::testing::run_command(cmd + " < /dev/null");
    auto second = tropex::testing::run_command(cmd + " < /dev/null");
    c.require(first.status == 0 && second.status == 0, "command failed: " + cmd);
    c.require(!first.out.empty() && first.out == second.out, "output differs between runs: " + cmd);
  }
}

struct Criterion {
  std::string name;
  double limitSeconds;  // 0 when unbounded
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"semiring laws", 1, semiring_laws},
      {"tropical and smooth part homomorphisms", 0, homomorphisms},
      {"nontrivial chart basis and relation", 1, nontrivial_basis},
      {"interval chart basis and relation", 0, interval_basis},
      {"tropical line", 0, tropical_line_check},
      {"normal fan of the intro polytope", 1, toric_duality},
      {"fiber products", 0, fiber_products},
      {"strata algebra", 10, strata_algebra},
      {"delta bound stability", 60, delta_bounds},
      {"degeneration fibers", 10, degenerations},
      {"subdivision validation", 0, subdivisions},
      {"parser round trip and reproducible CLI output", 0, parser_and_cli},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limitSeconds > 0 && secs > criteria[i].limitSeconds)
      check.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(criteria[i].limitSeconds) + " s");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << (i + 1) << " " << (check.ok ? "PASS" : "FAIL") << " [" << timing << "] "
              << criteria[i].name << (check.ok ? "" : ": " + check.why) << std::endl;
    if (!check.ok) ++failures;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
