#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace tropex {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Throws DimensionMismatch on ragged input. An empty list gives a 0×cols matrix.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows = 0) {
    return from_rows(columns, rows).transposed();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const { return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  std::vector<IntVector> column_list() const {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix to_rational() const {
    RatMatrix out(rows_, RatVector(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  IntVector apply(const IntVector& x) const {
    IntVector y(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  RatVector apply(const RatVector& x) const {
    RatVector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  // row_i += f * row_k
  void add_row(std::size_t i, std::size_t k, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
  }
  void add_col(std::size_t j, std::size_t k, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  Rational d = determinant(m.to_rational());
  return d.get_num();
}

struct SmithForm {
  IntMatrix U;  // rows × rows, unimodular
  IntMatrix D;  // rows × cols, diagonal with d_i | d_{i+1}
  IntMatrix V;  // cols × cols, unimodular
  std::size_t rank = 0;

  IntVector invariant_factors() const {
    IntVector f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(D(i, i));
    return f;
  }
};

// U * M * V == D.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  std::size_t m = M.rows(), n = M.cols();
  IntMatrix D = M, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);

    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (D(i, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
      D.add_row(i, t, -q);
      U.add_row(i, t, -q);
      if (D(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (D(t, j) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
      D.add_col(j, t, -q);
      V.add_col(j, t, -q);
      if (D(t, j) != 0) dirty = true;
    }
    if (dirty) continue;

    // divisibility: fold an offending row into row t and retry
    bool divides = true;
    for (std::size_t i = t + 1; i < m && divides; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
          D.add_row(t, i, 1);
          U.add_row(t, i, 1);
          divides = false;
          break;
        }
    if (!divides) continue;

    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
    ++t;
  }
  return {std::move(U), std::move(D), std::move(V), t};
}

// Canonical row-style Hermite normal form of the lattice spanned by the rows.
// Zero rows are dropped; pivots positive; entries above a pivot reduced into [0, pivot).
inline std::vector<IntVector> hermite_normal_form(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix H = IntMatrix::from_rows(rows, cols);
  std::size_t m = H.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    // euclid on column c among rows r..m-1
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (best == m || abs(H(i, c)) < abs(H(best, c)))) best = i;
      if (best == m) break;
      H.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        H.add_row(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) H.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (q != 0) H.add_row(i, r, -q);
    }
    ++r;
  }
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(H.row(i));
  return out;
}

// Basis (HNF rows) of {x ∈ ℤ^cols : A x = 0}.
inline std::vector<IntVector> integer_kernel(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank; j < A.cols(); ++j) basis.push_back(s.V.column(j));
  return hermite_normal_form(basis, A.cols());
}

// Integer kernel of a rational matrix (rows scaled to integers first).
inline std::vector<IntVector> integer_kernel(const RatMatrix& A, std::size_t cols) {
  std::vector<IntVector> rows;
  for (const auto& r : A) rows.push_back(primitive(r));
  return integer_kernel(IntMatrix::from_rows(rows, cols));
}

// Basis of span(vectors) ∩ ℤ^dim.
inline std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, std::size_t dim) {
  IntMatrix M = IntMatrix::from_rows(vectors, dim);  // rows are the vectors
  std::vector<IntVector> ortho = integer_kernel(M);
  return integer_kernel(IntMatrix::from_rows(ortho, dim));
}

// Index of the column lattice of M in its saturation; gcd of maximal minors.
inline Integer lattice_index(const IntMatrix& M) {
  SmithForm s = smith_normal_form(M);
  if (s.rank < M.cols())
    fail(ErrorCode::RankDeficient,
         "matrix has rank " + std::to_string(s.rank) + " < " + std::to_string(M.cols()) + " columns");
  Integer p = 1;
  for (const auto& f : s.invariant_factors()) p *= f;
  return p;
}

inline bool is_saturated(const IntMatrix& M) {
  SmithForm s = smith_normal_form(M);
  for (const auto& f : s.invariant_factors())
    if (f != 1) return false;
  return true;
}

// Rows of an integer matrix Q with ker Q ∩ ℤ^dim = saturation of span(vectors),
// and Q : ℤ^dim → ℤ^(dim - rank) surjective.
inline IntMatrix quotient_map(const std::vector<IntVector>& vectors, std::size_t dim) {
  std::vector<IntVector> basis = saturate(vectors, dim);
  IntMatrix B = IntMatrix::from_columns(basis, dim);
  if (basis.empty()) return IntMatrix::identity(dim);
  SmithForm s = smith_normal_form(B);
  IntMatrix Q(dim - s.rank, dim);
  for (std::size_t i = s.rank; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) Q(i - s.rank, j) = s.U(i, j);
  return Q;
}

}  // namespace tropex
