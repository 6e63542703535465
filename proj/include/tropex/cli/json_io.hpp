#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "../complex.hpp"
#include "../error.hpp"
#include "../lattice.hpp"
#include "../polyhedron.hpp"
#include "../polytope.hpp"
#include "../rational.hpp"
#include "parse.hpp"

namespace tropex::cli {

using json = nlohmann::json;

inline json to_json(const Rational& q) { return to_string(q); }
inline json to_json(const Integer& z) { return to_string(z); }
inline json to_json(const GaussianRational& c) { return to_string(c); }

template <class T>
json to_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Rational read_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  fail(ErrorCode::Syntax, "expected a rational, got " + j.dump());
}

inline Integer read_integer(const json& j) {
  Rational q = read_rational(j);
  if (q.get_den() != 1) fail(ErrorCode::Syntax, "expected an integer, got " + j.dump());
  return q.get_num();
}

inline std::size_t read_index(const json& j) {
  if (!j.is_number_unsigned()) fail(ErrorCode::Syntax, "expected a nonnegative index, got " + j.dump());
  return j.get<std::size_t>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Syntax, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) fail(ErrorCode::Syntax, std::string("field \"") + key + "\" must be an array");
  return a;
}

inline IntVector read_int_vector(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Syntax, "expected an array of integers, got " + j.dump());
  IntVector out;
  for (const auto& x : j) out.push_back(read_integer(x));
  return out;
}

inline RatVector read_rat_vector(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Syntax, "expected an array of rationals, got " + j.dump());
  RatVector out;
  for (const auto& x : j) out.push_back(read_rational(x));
  return out;
}

inline std::vector<IntVector> read_int_vectors(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Syntax, "expected an array of vectors, got " + j.dump());
  std::vector<IntVector> out;
  for (const auto& x : j) out.push_back(read_int_vector(x));
  return out;
}

inline IntMatrix read_matrix(const json& j, std::size_t cols) {
  auto rows = read_int_vectors(j);
  for (const auto& r : rows)
    if (r.size() != cols) fail(ErrorCode::DimensionMismatch, "matrix row has the wrong length");
  return IntMatrix::from_rows(rows, cols);
}

inline json to_json(const IntMatrix& m) {
  json out = json::array();
  for (const auto& r : m.row_list()) out.push_back(to_json(r));
  return out;
}

// A constraint is either inequality text ("x1 + 2x2 >= 0") or {"a", "alpha", "strict"}.
inline Constraint read_constraint(const json& j, std::size_t dim) {
  if (j.is_string()) return parse_constraint(j.get<std::string>(), dim);
  IntVector alpha = read_int_vector(field(j, "alpha"));
  if (alpha.size() != dim) fail(ErrorCode::DimensionMismatch, "constraint normal has the wrong length");
  bool strict = j.contains("strict") && j.at("strict").get<bool>();
  return {read_rational(field(j, "a")), alpha, strict};
}

inline AffinePolytope read_polytope(const json& j) {
  std::size_t dim = read_index(field(j, "dim"));
  std::vector<Constraint> cs;
  if (j.contains("constraints"))
    for (const auto& c : array_field(j, "constraints")) cs.push_back(read_constraint(c, dim));
  return {dim, cs};
}

inline json to_json(const Constraint& c) { return {{"a", to_json(c.a)}, {"alpha", to_json(c.alpha)}, {"strict", c.strict}}; }

inline json to_json(const AffinePolytope& p) {
  json cs = json::array();
  for (const auto& c : p.constraints()) cs.push_back(to_json(c));
  return {{"dim", p.dim()}, {"constraints", cs}};
}

// V-description {"dim", "vertices", "rays", "lineality"} or H-description {"dim", "inequalities", "equations"}.
inline Polyhedron read_polyhedron(const json& j) {
  std::size_t dim = read_index(field(j, "dim"));
  if (j.contains("inequalities") || j.contains("equations")) {
    std::vector<Halfspace> ineqs, eqs;
    auto read = [&](const char* key, std::vector<Halfspace>& out) {
      if (!j.contains(key)) return;
      for (const auto& c : array_field(j, key)) {
        Constraint k = read_constraint(c, dim);
        out.push_back({k.a, k.alpha});
      }
    };
    read("inequalities", ineqs);
    read("equations", eqs);
    return Polyhedron::from_hrep(dim, ineqs, eqs);
  }
  std::vector<RatVector> vs;
  for (const auto& v : array_field(j, "vertices")) {
    vs.push_back(read_rat_vector(v));
    if (vs.back().size() != dim) fail(ErrorCode::DimensionMismatch, "vertex has the wrong length");
  }
  std::vector<IntVector> rays, lin;
  if (j.contains("rays")) rays = read_int_vectors(j.at("rays"));
  if (j.contains("lineality")) lin = read_int_vectors(j.at("lineality"));
  for (const auto* group : {&rays, &lin})
    for (const auto& r : *group)
      if (r.size() != dim) fail(ErrorCode::DimensionMismatch, "direction has the wrong length");
  return Polyhedron::from_vrep(dim, vs, rays, lin);
}

inline json to_json(const Polyhedron& p) {
  json out{{"cellDim", p.affine_dim()},
           {"vertices", json::array()},
           {"rays", json::array()},
           {"lineality", json::array()}};
  for (const auto& v : p.vertices()) out["vertices"].push_back(to_json(v));
  for (const auto& r : p.rays()) out["rays"].push_back(to_json(r));
  for (const auto& l : p.lineality()) out["lineality"].push_back(to_json(l));
  return out;
}

inline json to_json(const PolyhedralComplex& c) {
  json cells = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json cell = to_json(c.cell(i));
    cell["index"] = i;
    cell["weight"] = to_json(c.weight(i));
    if (c.is_abstract()) cell["label"] = c.labels()[i];
    cells.push_back(cell);
  }
  json inc = json::array();
  for (const auto& e : c.incidences()) {
    json x{{"face", e.face}, {"cell", e.cell}};
    if (c.is_abstract()) {
      x["linear"] = to_json(e.linear);
      x["offset"] = to_json(e.offset);
    }
    inc.push_back(x);
  }
  json out{{"cells", cells}, {"incidences", inc}};
  if (!c.is_abstract()) out["ambientDim"] = c.ambient_dim();
  return out;
}

// {"dim", "cells": [polyhedron], "weights": [...]} closed under faces.
inline PolyhedralComplex read_complex(const json& j) {
  std::size_t dim = read_index(field(j, "dim"));
  std::vector<Polyhedron> cells;
  for (const auto& c : array_field(j, "cells")) {
    json cj = c;
    if (!cj.contains("dim")) cj["dim"] = dim;
    cells.push_back(read_polyhedron(cj));
  }
  std::vector<Integer> weights;
  if (j.contains("weights")) {
    for (const auto& w : array_field(j, "weights")) weights.push_back(read_integer(w));
    if (weights.size() != cells.size()) fail(ErrorCode::DimensionMismatch, "one weight per cell expected");
  }
  return PolyhedralComplex::from_maximal(dim, cells, weights);
}

// Adds "<key>Float" beside every exact rational string, and beside arrays of them.
inline void add_float_approximations(json& j) {
  auto isRational = [](const json& x) {
    if (!x.is_string()) return false;
    try {
      parse_rational(x.get<std::string>());
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  std::function<std::optional<json>(const json&)> approx = [&](const json& x) -> std::optional<json> {
    if (isRational(x)) return json(parse_rational(x.get<std::string>()).get_d());
    if (x.is_array() && !x.empty()) {
      json out = json::array();
      for (const auto& e : x) {
        auto a = approx(e);
        if (!a) return std::nullopt;
        out.push_back(*a);
      }
      return out;
    }
    return std::nullopt;
  };
  if (j.is_array()) {
    for (auto& e : j) add_float_approximations(e);
    return;
  }
  if (!j.is_object()) return;
  json extra = json::object();
  for (auto& [k, v] : j.items()) {
    if (auto a = approx(v)) extra[k + "Float"] = *a;
    add_float_approximations(v);
  }
  for (auto& [k, v] : extra.items()) j[k] = v;
}

}  // namespace tropex::cli
