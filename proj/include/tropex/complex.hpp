#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lattice.hpp"
#include "polyhedron.hpp"
#include "polytope.hpp"
#include "rational.hpp"

namespace tropex {

// `face` is glued into `cell` by x ↦ linear · x + offset. Geometric complexes use the identity.
struct Incidence {
  std::size_t face;
  std::size_t cell;
  IntMatrix linear;
  RatVector offset;
};

inline bool is_face_of(const Polyhedron& g, const Polyhedron& f) {
  if (g.is_empty()) return true;
  if (!f.contains(g)) return false;
  return f.face(f.tight_set(g.relint_point())) == g;
}

// Cells with optional integer weights. Geometric complexes live in one ambient space;
// abstract ones (e.g. dual intersection complexes) keep each cell in its own coordinates.
class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;
  explicit PolyhedralComplex(std::size_t ambientDim) : ambient_(ambientDim) {}

  // Closes the given cells under taking faces; weights attach to the given cells.
  static PolyhedralComplex from_maximal(std::size_t ambientDim, const std::vector<Polyhedron>& cells,
                                        const std::vector<Integer>& weights = {}) {
    std::map<Polyhedron, Integer> all;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Polyhedron& c = cells[i];
      if (c.is_empty()) continue;
      if (c.dim() != ambientDim) fail(ErrorCode::DimensionMismatch, "cell lives in the wrong ambient space");
      for (const auto& t : c.face_tight_sets()) {
        Polyhedron f = c.face(t);
        all.emplace(f, Integer(0));
      }
      all[c] = weights.empty() ? Integer(0) : weights[i];
    }
    std::vector<std::pair<Polyhedron, Integer>> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return a.first.affine_dim() < b.first.affine_dim();
    });
    PolyhedralComplex out(ambientDim);
    for (auto& [p, w] : sorted) {
      out.cells_.push_back(p);
      out.weights_.push_back(w);
    }
    out.link_faces();
    return out;
  }

  std::size_t ambient_dim() const { return ambient_; }
  bool is_abstract() const { return abstract_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  const Polyhedron& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<Integer>& weights() const { return weights_; }
  const Integer& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Incidence>& incidences() const { return incidences_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int top_dim() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, c.affine_dim());
    return d;
  }

  std::vector<std::size_t> cells_of_dim(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].affine_dim() == d) out.push_back(i);
    return out;
  }

  // Indices of cells having cell i as a proper face.
  std::vector<std::size_t> cofaces(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& inc : incidences_)
      if (inc.face == i) out.push_back(inc.cell);
    return out;
  }

  std::optional<std::size_t> find(const Polyhedron& p) const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] == p) return i;
    return std::nullopt;
  }

  // Appends a cell of an abstract complex.
  std::size_t add_abstract_cell(const Polyhedron& p, std::string label, const Integer& weight = 0) {
    abstract_ = true;
    cells_.push_back(p);
    weights_.push_back(weight);
    labels_.push_back(std::move(label));
    return cells_.size() - 1;
  }

  void add_incidence(Incidence inc) {
    if (inc.face >= cells_.size() || inc.cell >= cells_.size())
      fail(ErrorCode::InvalidArgument, "incidence refers to a missing cell");
    for (const auto& e : incidences_)
      if (e.face == inc.face && e.cell == inc.cell)
        fail(ErrorCode::NotBasic, "two gluings between the same pair of cells");
    incidences_.push_back(std::move(inc));
  }

  // Point membership in the support of a geometric complex.
  bool support_contains(const RatVector& x) const {
    return std::any_of(cells_.begin(), cells_.end(), [&](const Polyhedron& c) { return c.contains(x); });
  }

  // First pair of cells whose intersection is not a face of both.
  std::optional<std::pair<std::size_t, std::size_t>> intersection_violation() const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
      for (std::size_t j = i + 1; j < cells_.size(); ++j) {
        Polyhedron meet = cells_[i].intersect(cells_[j]);
        if (!is_face_of(meet, cells_[i]) || !is_face_of(meet, cells_[j])) return std::make_pair(i, j);
      }
    return std::nullopt;
  }

  friend bool operator==(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    if (a.ambient_ != b.ambient_ || a.cells_ != b.cells_ || a.weights_ != b.weights_) return false;
    if (a.incidences_.size() != b.incidences_.size()) return false;
    for (std::size_t i = 0; i < a.incidences_.size(); ++i) {
      const auto& x = a.incidences_[i];
      const auto& y = b.incidences_[i];
      if (x.face != y.face || x.cell != y.cell || x.linear != y.linear || x.offset != y.offset) return false;
    }
    return true;
  }

 private:
  void link_faces() {
    incidences_.clear();
    std::map<Polyhedron, std::size_t> index;
    for (std::size_t i = 0; i < cells_.size(); ++i) index.emplace(cells_[i], i);
    for (std::size_t j = 0; j < cells_.size(); ++j) {
      std::vector<std::size_t> faces;
      for (const auto& t : cells_[j].face_tight_sets()) {
        if (t.empty()) continue;
        auto it = index.find(cells_[j].face(t));
        if (it != index.end()) faces.push_back(it->second);
      }
      std::sort(faces.begin(), faces.end());
      for (auto i : faces)
        incidences_.push_back({i, j, IntMatrix::identity(ambient_), RatVector(ambient_, Rational(0))});
    }
    std::sort(incidences_.begin(), incidences_.end(), [](const Incidence& a, const Incidence& b) {
      return std::make_pair(a.face, a.cell) < std::make_pair(b.face, b.cell);
    });
  }

  std::size_t ambient_ = 0;
  bool abstract_ = false;
  std::vector<Polyhedron> cells_;
  std::vector<Integer> weights_;
  std::vector<Incidence> incidences_;
  std::vector<std::string> labels_;
};

using WeightedComplex = PolyhedralComplex;

struct SubdivisionReport {
  bool valid = true;
  std::string diagnostic;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

// Pieces must have the dimension of `whole`, lie in it, meet pairwise in common faces, and cover it.
inline SubdivisionReport validate_subdivision(const Polyhedron& whole, const std::vector<Polyhedron>& pieces) {
  auto reject = [](std::string msg, std::optional<std::pair<std::size_t, std::size_t>> pr = std::nullopt) {
    return SubdivisionReport{false, std::move(msg), pr};
  };
  if (pieces.empty()) return reject("no pieces given");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].dim() != whole.dim() || pieces[i].affine_dim() != whole.affine_dim())
      return reject("piece " + std::to_string(i) + " has the wrong dimension");
    if (!whole.contains(pieces[i])) return reject("piece " + std::to_string(i) + " is not contained in the polytope");
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      Polyhedron meet = pieces[i].intersect(pieces[j]);
      if (!is_face_of(meet, pieces[i]) || !is_face_of(meet, pieces[j]))
        return reject("pieces " + std::to_string(i) + " and " + std::to_string(j) +
                          " intersect in a set that is not a face of both",
                      std::make_pair(i, j));
    }
  // coverage: every facet of a piece lies on the boundary or is shared with another piece
  std::vector<Polyhedron> boundary;
  for (std::size_t g = 0; g < whole.inequalities().size(); ++g) boundary.push_back(whole.face({g}));
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Polyhedron& a = pieces[i];
    for (std::size_t f = 0; f < a.inequalities().size(); ++f) {
      Polyhedron facet = a.face({f});
      bool covered = std::any_of(boundary.begin(), boundary.end(), [&](const Polyhedron& b) { return b.contains(facet); });
      for (std::size_t j = 0; j < pieces.size() && !covered; ++j) {
        if (j == i) continue;
        for (std::size_t g = 0; g < pieces[j].inequalities().size() && !covered; ++g)
          if (pieces[j].face({g}) == facet) covered = true;
      }
      if (!covered)
        return reject("pieces do not cover the polytope: facet " + std::to_string(f) + " of piece " +
                      std::to_string(i) + " is exposed");
    }
  }
  return {};
}

inline SubdivisionReport validate_subdivision(const AffinePolytope& p, const std::vector<AffinePolytope>& pieces) {
  std::vector<Polyhedron> closed;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].dim() != p.dim()) return {false, "piece " + std::to_string(i) + " has the wrong dimension", std::nullopt};
    for (const auto& c : pieces[i].constraints())
      if (c.strict) return {false, "piece " + std::to_string(i) + " is not closed", std::nullopt};
    closed.push_back(pieces[i].closure());
  }
  return validate_subdivision(p.closure(), closed);
}

}  // namespace tropex
