#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "../charts.hpp"
#include "../complex.hpp"
#include "../error.hpp"
#include "../geometry_ops.hpp"
#include "../hull.hpp"
#include "../polytope.hpp"
#include "../rational.hpp"
#include "../semiring.hpp"
#include "../strata_calculus.hpp"
#include "../troppoly.hpp"
#include "json_io.hpp"
#include "parse.hpp"
#include "svg.hpp"

namespace tropex::cli {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;  // flag name without dashes -> value
  bool wantSvg = false;
  bool floats = false;

  std::optional<std::string> option(const std::string& name) const {
    auto it = options.find(name);
    if (it == options.end()) return std::nullopt;
    return it->second;
  }
};

struct CommandResult {
  int status = 0;
  json payload;
  std::optional<std::string> svg;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"eval",         "tropicalize", "hypersurface",  "balance",   "basis",
                                              "relations",    "explode-ncd", "explode-toric", "refine",    "fiber-product",
                                              "degenerate",   "fiber",       "pants",         "strata-op", "seminorm"};
  return names;
}

// Best rational approximation with denominator at most maxDen.
inline Rational approximate(double x, long maxDen = 1000000) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "value is not finite");
  bool neg = x < 0;
  double y = std::abs(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(y);
    Integer ai(a);
    Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > maxDen) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = y - a;
    if (frac < 1e-12) break;
    y = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

inline json approx_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return to_json(approximate(x));
}

namespace detail {

inline std::string require_expression(const Args& a) {
  if (a.positional.empty()) fail(ErrorCode::Usage, "missing polynomial expression");
  if (a.positional.size() > 1) fail(ErrorCode::Usage, "unexpected extra argument '" + a.positional[1] + "'");
  return a.positional[0];
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Syntax, what + " is not valid JSON: " + e.what());
  }
}

inline json require_stdin(const std::string& text, const std::string& what) {
  bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) fail(ErrorCode::Usage, what + " expected on standard input");
  return parse_json(text, what);
}

inline AffinePolytope require_polytope(const Args& a) {
  auto p = a.option("polytope");
  if (!p) fail(ErrorCode::Usage, "--polytope is required");
  return read_polytope(parse_json(*p, "--polytope"));
}

inline Rational rational_option(const Args& a, const std::string& name, const Rational& fallback) {
  auto v = a.option(name);
  return v ? parse_rational(*v) : fallback;
}

inline int grid_option(const Args& a) {
  std::string text;
  if (auto g = a.option("grid"))
    text = *g;
  else if (const char* env = std::getenv("TROPEX_GRID"))
    text = env;
  else
    return 4;
  Rational r = parse_rational(text);
  if (r.get_den() != 1 || r < 1 || r > 64) fail(ErrorCode::InvalidArgument, "grid resolution must be an integer in [1, 64]");
  return static_cast<int>(r.get_num().get_si());
}

inline json monomial_json(const SmoothMonomial& m) { return {{"a", to_json(m.a)}, {"alpha", to_json(m.alpha)}}; }

inline std::string zeta_power(const IntVector& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += "ζ" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

inline json relation_json(const Relation& r) {
  std::string rhs = r.constant == 0 ? zeta_power(r.rhs()) : "0";
  return {{"r", to_json(r.r)},
          {"constant", to_json(r.constant)},
          {"lhs", to_json(r.lhs())},
          {"rhs", to_json(r.rhs())},
          {"text", zeta_power(r.lhs()) + " = " + rhs}};
}

inline json rays_summary(const PolyhedralComplex& w) {
  json out = json::array();
  for (auto i : w.cells_of_dim(1))
    for (const auto& r : w.cell(i).rays())
      out.push_back({{"cell", i}, {"direction", to_json(r)}, {"weight", to_json(w.weight(i))}});
  return out;
}

inline std::optional<std::string> maybe_svg(const Args& a, const PolyhedralComplex& w) {
  if (!a.wantSvg) return std::nullopt;
  return render_svg(w);
}

inline DegenerationFamily family_from(const Args& a) {
  auto terms = parse_terms(require_expression(a));
  std::vector<IntVector> S;
  std::vector<GaussianRational> coeffs;
  std::vector<Integer> v;
  for (const auto& t : terms) {
    S.push_back(t.alpha);
    coeffs.push_back(t.c);
  }
  if (auto lift = a.option("lift")) {
    v = read_int_vector(parse_json(*lift, "--lift"));
    if (v.size() != terms.size())
      fail(ErrorCode::DimensionMismatch, "--lift needs one integer per term, in the order written");
  } else {
    for (const auto& t : terms) {
      if (t.a.get_den() != 1) fail(ErrorCode::InvalidArgument, "lift exponents taken from t^a must be integers");
      v.push_back(t.a.get_num());
    }
  }
  return make_family(S, coeffs, v);
}

// Smooth-coordinate polynomial: z_i stands for the i-th basis monomial of the chart.
inline SmoothPoly smooth_from(const std::string& text, std::size_t n) {
  ExplodedPolynomial f = parse_polynomial(text, n);
  SmoothPoly p(n);
  for (const auto& t : f.terms()) {
    if (t.a != 0) fail(ErrorCode::InvalidArgument, "test functions are written in smooth coordinates without t");
    SmoothPoly::Exponent e(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.alpha[i] < 0) fail(ErrorCode::InvalidArgument, "test functions need nonnegative exponents");
      e[i] = static_cast<unsigned>(t.alpha[i].get_ui());
    }
    p.add_term(e, t.c);
  }
  return p;
}

inline std::string smooth_text(const SmoothPoly& p) {
  std::vector<Term> terms;
  std::size_t n = p.n();
  for (const auto& [e, c] : p.terms()) {
    IntVector alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[n + i]) fail(ErrorCode::InvalidArgument, "conjugate variables cannot be printed");
      alpha[i] = e[i];
    }
    terms.push_back({c, Rational(0), alpha});
  }
  return print_polynomial(ExplodedPolynomial(n, terms));
}

inline std::vector<Stratum> strata_option(const Args& a, const Chart& chart) {
  auto s = a.option("strata");
  if (!s) fail(ErrorCode::Usage, "--strata is required");
  json j = parse_json(*s, "--strata");
  if (!j.is_array()) fail(ErrorCode::Syntax, "--strata must be an array of tight sets");
  std::vector<Stratum> out;
  for (const auto& t : j) {
    if (!t.is_array()) fail(ErrorCode::Syntax, "each stratum is an array of constraint indices");
    std::vector<std::size_t> tight;
    for (const auto& i : t) {
      std::size_t k = read_index(i);
      if (k >= chart.polytope().constraints().size()) fail(ErrorCode::NotAStratum, "no constraint " + std::to_string(k));
      tight.push_back(k);
    }
    std::sort(tight.begin(), tight.end());
    Stratum st = chart.polytope().face_with_tight_set(tight);
    if (st.tight != tight) fail(ErrorCode::NotAStratum, "tight set " + t.dump() + " is not closed");
    out.push_back(st);
  }
  return out;
}

inline Region region_option(const Args& a, const Chart& chart) {
  Region r;
  if (auto radii = a.option("radii")) {
    for (const auto& x : read_rat_vector(parse_json(*radii, "--radii"))) r.radii.push_back(x.get_d());
  } else {
    r.radii.assign(chart.basis().size(), 1.0);
  }
  return r;
}

inline json stratum_json(const Stratum& s) {
  json t = json::array();
  for (auto i : s.tight) t.push_back(i);
  return {{"tight", t}, {"relint", to_json(s.relint)}};
}

inline std::string weight_text(const WeightDescriptor& w) {
  if (w.generators.empty()) return "1";
  std::string s;
  for (const auto& g : w.generators) s += (s.empty() ? "|" : " + |") + zeta_power(g) + "|";
  return s;
}

inline IntegralAffineMap read_map(const json& j) {
  AffinePolytope domain = read_polytope(field(j, "domain"));
  IntMatrix linear = read_matrix(field(j, "linear"), domain.dim());
  RatVector translation = j.contains("translation") ? read_rat_vector(j.at("translation"))
                                                    : RatVector(linear.rows(), Rational(0));
  return {domain, linear, translation};
}

inline CommandResult dispatch(const std::string& cmd, const Args& a, const std::string& input) {
  CommandResult out;
  json& p = out.payload;
  if (cmd == "eval") {
    ExplodedPolynomial f = parse_polynomial(require_expression(a));
    auto at = a.option("at");
    if (!at) fail(ErrorCode::Usage, "--at is required");
    ChartPoint pt{{}, parse_point(*at, f.m())};
    ExplodedValue v = evaluate(f, pt);
    p = {{"coeff", to_json(v.coeff)}, {"exp", to_json(v.exponent)}, {"inZeroLocus", v.coeff.is_zero()}};
  } else if (cmd == "tropicalize") {
    ExplodedPolynomial f = parse_polynomial(require_expression(a));
    TropicalPLFunction t = tropicalize(f);
    json pieces = json::array();
    for (const auto& [c, alpha] : t.pieces) pieces.push_back({{"a", to_json(c)}, {"alpha", to_json(alpha)}});
    p = {{"m", t.m}, {"pieces", pieces}};
    if (auto at = a.option("at")) {
      RatVector x = read_rat_vector(parse_json(*at, "--at"));
      if (x.size() != t.m) fail(ErrorCode::DimensionMismatch, "--at needs one coordinate per variable");
      p["value"] = to_json(t(x));
    }
  } else if (cmd == "hypersurface") {
    ExplodedPolynomial f = parse_polynomial(require_expression(a));
    AffinePolytope ambient = a.option("polytope") ? require_polytope(a) : AffinePolytope::whole_space(f.m());
    WeightedComplex w = corner_locus(f, ambient);
    p = {{"polynomial", print_polynomial(f)}, {"complex", to_json(w)}, {"rays", rays_summary(w)}};
    out.svg = maybe_svg(a, w);
  } else if (cmd == "balance") {
    WeightedComplex w = a.positional.empty() ? read_complex(require_stdin(input, "complex"))
                                             : corner_locus(parse_polynomial(require_expression(a)));
    BalanceReport r = is_balanced(w);
    p = {{"balanced", r.balanced}, {"message", r.message}};
    if (r.cell) {
      p["cell"] = *r.cell;
      p["residual"] = to_json(r.residual);
    }
  } else if (cmd == "basis" || cmd == "relations") {
    Chart chart(0, require_polytope(a));
    json rel = json::array();
    for (const auto& r : chart.relations()) rel.push_back(relation_json(r));
    p = {{"relations", rel}};
    if (cmd == "basis") {
      json b = json::array();
      for (const auto& m : chart.basis()) b.push_back(monomial_json(m));
      p["basis"] = b;
    }
  } else if (cmd == "explode-ncd") {
    json j = require_stdin(input, "normal crossing configuration");
    NCConfiguration cfg;
    for (const auto& c : array_field(j, "components")) cfg.components.push_back(c.get<std::string>());
    for (const auto& d : array_field(j, "divisors")) cfg.divisors.push_back(d.get<std::string>());
    if (j.contains("strata"))
      for (const auto& s : array_field(j, "strata")) {
        NCStratum st;
        for (const auto& d : array_field(s, "divisors")) st.divisors.push_back(d.get<std::string>());
        st.component = field(s, "component").get<std::string>();
        if (s.contains("count")) st.count = s.at("count").get<long>();
        cfg.strata.push_back(st);
      }
    p = {{"complex", to_json(explode_ncd(cfg))}};
  } else if (cmd == "explode-toric") {
    bool blank = input.find_first_not_of(" \t\r\n") == std::string::npos;
    std::optional<AffinePolytope> moment;
    if (a.option("polytope")) moment = require_polytope(a);
    PolyhedralComplex fan;
    if (blank) {
      if (!moment) fail(ErrorCode::Usage, "give a fan on standard input or a moment polytope with --polytope");
      fan = explode_toric(normal_fan(*moment));
    } else {
      json j = parse_json(input, "fan");
      std::size_t dim = read_index(field(j, "dim"));
      std::vector<std::vector<IntVector>> cones;
      for (const auto& c : array_field(j, "cones")) cones.push_back(read_int_vectors(c));
      fan = explode_toric(make_fan(dim, cones), moment);
    }
    p = {{"complex", to_json(fan)}, {"rays", to_json(fan_rays(fan))}};
    out.svg = maybe_svg(a, fan);
  } else if (cmd == "refine") {
    json j = require_stdin(input, "refinement request");
    if (j.contains("pieces")) {
      json whole = field(j, "polytope");
      std::size_t dim = read_index(field(whole, "dim"));
      std::vector<Polyhedron> pieces;
      for (const auto& c : array_field(j, "pieces")) {
        json cj = c;
        if (!cj.contains("dim")) cj["dim"] = dim;
        pieces.push_back(read_polyhedron(cj));
      }
      SubdivisionReport r = validate_subdivision(read_polyhedron(whole), pieces);
      p = {{"valid", r.valid}, {"diagnostic", r.diagnostic}};
      if (r.pair) p["pair"] = {r.pair->first, r.pair->second};
    } else {
      PolyhedralComplex c = read_complex(field(j, "complex"));
      std::map<std::size_t, std::vector<Polyhedron>> subs;
      if (j.contains("subdivisions"))
        for (const auto& [key, pieces] : field(j, "subdivisions").items()) {
          std::size_t idx = static_cast<std::size_t>(read_integer(json(key)).get_ui());
          for (const auto& piece : pieces) {
            json cj = piece;
            if (!cj.contains("dim")) cj["dim"] = c.ambient_dim();
            subs[idx].push_back(read_polyhedron(cj));
          }
        }
      PolyhedralComplex r = refine(c, subs);
      p = {{"complex", to_json(r)}};
      out.svg = maybe_svg(a, r);
    }
  } else if (cmd == "fiber-product") {
    json j = require_stdin(input, "pair of maps");
    IntegralAffineMap f = read_map(field(j, "f")), g = read_map(field(j, "g"));
    std::optional<IntMatrix> fl, gl;
    if (j.contains("fLattice")) fl = read_matrix(j.at("fLattice"), f.domain.dim());
    if (j.contains("gLattice")) gl = read_matrix(j.at("gLattice"), g.domain.dim());
    FiberProduct fp = tropical_fiber_product(f, g, fl, gl);
    p = {{"multiplicity", to_json(fp.multiplicity)},
         {"zTransverse", fp.zTransverse},
         {"polytope", to_json(fp.polytope)},
         {"base", to_json(fp.base)},
         {"directions", to_json(fp.directions)}};
  } else if (cmd == "degenerate") {
    DegenerationFamily fam = family_from(a);
    json simplices = json::array();
    for (const auto& s : fam.simplices) {
      json names = json::array();
      for (auto i : s) names.push_back(ExplodedPolynomial::monomial_name(fam.S[i]));
      simplices.push_back(names);
    }
    p = {{"lift", to_json(fam.v)}, {"simplices", simplices}, {"totalPolynomial", print_polynomial(fam.total_polynomial())}};
  } else if (cmd == "fiber") {
    DegenerationFamily fam = family_from(a);
    WeightedComplex w = family_fiber(fam, rational_option(a, "w", Rational(1)));
    p = {{"complex", to_json(w)}, {"rays", rays_summary(w)}};
    out.svg = maybe_svg(a, w);
  } else if (cmd == "pants") {
    DegenerationFamily fam = family_from(a);
    PantsCensus c = pants_census(fam, rational_option(a, "w", Rational(1)));
    p = {{"simplices", c.simplices}, {"vertices", c.vertices}, {"edges", c.edges}, {"rays", c.rays}};
  } else if (cmd == "strata-op") {
    Chart chart(0, require_polytope(a));
    SmoothPoly f = smooth_from(require_expression(a), chart.basis().size());
    std::vector<Stratum> I = strata_option(a, chart);
    std::string op = a.option("op").value_or("delta");
    json basis = json::array();
    for (const auto& m : chart.basis()) basis.push_back(monomial_json(m));
    json strata = json::array();
    for (const auto& s : I) strata.push_back(stratum_json(s));
    p = {{"basis", basis}, {"strata", strata}, {"op", op}};
    if (op == "e") {
      p["result"] = smooth_text(e_I(f, I, chart).polynomial());
    } else if (op == "delta") {
      p["result"] = smooth_text(delta_I(f, I, chart).polynomial());
    } else if (op == "w") {
      WeightDescriptor w = weight_w_I(I, chart);
      p["generators"] = to_json(w.generators);
      p["weight"] = weight_text(w);
    } else if (op == "bound") {
      DeltaBound b = verify_delta_bound(f, I, chart, region_option(a, chart), grid_option(a));
      p["supRatio"] = approx_json(b.supRatio);
      p["coarse"] = approx_json(b.coarse);
      p["stable"] = b.stable;
    } else {
      fail(ErrorCode::Usage, "--op must be one of e, delta, w, bound");
    }
  } else if (cmd == "seminorm") {
    Chart chart(0, require_polytope(a));
    SmoothPoly f = smooth_from(require_expression(a), chart.basis().size());
    Rational k = rational_option(a, "k", Rational(0));
    if (k.get_den() != 1 || k < 0 || k > 8) fail(ErrorCode::InvalidArgument, "--k must be an integer in [0, 8]");
    SeminormEstimate e = seminorm_estimate(f, static_cast<int>(k.get_num().get_si()),
                                           rational_option(a, "delta", make_rational(1, 2)), chart,
                                           region_option(a, chart), grid_option(a));
    json perI = json::object();
    for (const auto& [label, v] : e.perI) perI[label] = approx_json(v);
    p = {{"seminorm", approx_json(e.value)}, {"gradientPart", approx_json(e.gradientPart)}, {"perI", perI}};
  } else {
    fail(ErrorCode::Usage, "unknown command '" + cmd + "'");
  }
  return out;
}

}  // namespace detail

inline json error_json(const Error& e) {
  json err{{"code", static_cast<int>(e.code())}, {"name", std::string(error_name(e.code()))}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    err["line"] = s->line();
    err["column"] = s->column();
  }
  return {{"error", err}};
}

inline CommandResult run(const std::string& command, const Args& args, const std::string& input) {
  CommandResult out;
  try {
    out = detail::dispatch(command, args, input);
    if (args.wantSvg && !out.svg) fail(ErrorCode::Usage, "command '" + command + "' does not produce a drawing");
    if (args.floats) add_float_approximations(out.payload);
  } catch (const Error& e) {
    out = {static_cast<int>(e.code()), error_json(e), std::nullopt};
  } catch (const json::exception& e) {
    out = {static_cast<int>(ErrorCode::Syntax), error_json(Error(ErrorCode::Syntax, e.what())), std::nullopt};
  }
  return out;
}

}  // namespace tropex::cli
