#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace tropex {

// Dense row-major rational matrix stored as a list of rows.
using RatMatrix = std::vector<RatVector>;

struct RowEchelon {
  RatMatrix rows;               // reduced, nonzero rows only
  std::vector<std::size_t> pivots;
};

inline RowEchelon rref(RatMatrix a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& a, std::size_t cols) { return rref(a, cols).pivots.size(); }

// Basis of {x : a x = 0}, one vector per free column.
inline RatMatrix nullspace(const RatMatrix& a, std::size_t cols) {
  RowEchelon e = rref(a, cols);
  std::vector<bool> isPivot(cols, false);
  for (auto p : e.pivots) isPivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    RatVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of a x = b, or nullopt if inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b, std::size_t cols) {
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RowEchelon e = rref(std::move(aug), cols + 1);
  RatVector x(cols, Rational(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

inline Rational determinant(RatMatrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline RatMatrix to_rational(const std::vector<IntVector>& rows) {
  RatMatrix out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_rational(r));
  return out;
}

}  // namespace tropex
