#ifndef SKEWSF_LINALG_HPP
#define SKEWSF_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/field.hpp"

namespace skewsf {

using Vec = std::vector<Elem>;

/// Dense row-major matrix of field codes. The field is supplied to each
/// operation; a Matrix does not know which field it lives over.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_columns(const std::vector<Vec>& cols) {
    const std::size_t r = cols.empty() ? 0 : cols.front().size();
    Matrix m(r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Elem>& data() const { return a_; }

  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

namespace linalg {

inline Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw precondition_error("matrix dimension mismatch");
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Elem a = A(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
    }
  return C;
}

inline Vec apply(const Field& F, const Matrix& A, const Vec& v) {
  if (A.cols() != v.size()) throw precondition_error("matrix-vector dimension mismatch");
  Vec r(A.rows(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Elem s = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) s = F.add(s, F.mul(A(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

inline Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = F.add(A(i, j), B(i, j));
  return C;
}

inline Matrix scale(const Field& F, Elem s, const Matrix& A) {
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = F.mul(s, A(i, j));
  return C;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(const Field& F, Matrix& A) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
    std::size_t piv = row;
    while (piv < A.rows() && A(piv, col) == 0) ++piv;
    if (piv == A.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(piv, j), A(row, j));
    const Elem inv = F.inv(A(row, col));
    for (std::size_t j = 0; j < A.cols(); ++j) A(row, j) = F.mul(inv, A(row, j));
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col) == 0) continue;
      const Elem c = A(i, col);
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = F.sub(A(i, j), F.mul(c, A(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const Field& F, Matrix A) { return rref(F, A).size(); }

/// Basis of the right kernel {x : A x = 0}, one vector per free column in
/// increasing column order (the free coordinate set to 1).
inline std::vector<Vec> kernel(const Field& F, Matrix A) {
  const auto pivots = rref(F, A);
  std::vector<char> is_pivot(A.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < A.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(A.cols(), 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = F.neg(A(r, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Some x with A x = b, if one exists.
inline std::optional<Vec> solve(const Field& F, const Matrix& A, const Vec& b) {
  Matrix aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  const auto pivots = rref(F, aug);
  if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
  Vec x(A.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, A.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Field& F, const Matrix& A) {
  if (A.rows() != A.cols()) throw precondition_error("inverse of a non-square matrix");
  const std::size_t n = A.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(F, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Incrementally maintained span that remembers how each reduced row was
/// built from the inserted vectors, so the first dependency can be read off
/// as a combination of earlier insertions.
class IncrementalSpan {
 public:
  IncrementalSpan(const Field& F, std::size_t dim) : F_(&F), dim_(dim) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Inserts v. Returns nullopt if v is independent of the previous
  /// insertions, else coefficients c with v = sum_i c_i v_i over them.
  std::optional<Vec> insert(const Vec& v) {
    const Field& F = *F_;
    Vec r = v;
    Vec comb(inserted_ + 1, 0);
    comb[inserted_] = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = r[pivot_[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) r[j] = F.sub(r[j], F.mul(c, rows_[k][j]));
      for (std::size_t j = 0; j < combs_[k].size(); ++j) comb[j] = F.sub(comb[j], F.mul(c, combs_[k][j]));
    }
    std::size_t piv = 0;
    while (piv < dim_ && r[piv] == 0) ++piv;
    ++inserted_;
    if (piv == dim_) {
      // 0 = v - sum(...) expressed through comb; comb[last] == 1.
      Vec out(inserted_ - 1, 0);
      for (std::size_t j = 0; j + 1 < inserted_; ++j) out[j] = F.neg(comb[j]);
      return out;
    }
    const Elem inv = F.inv(r[piv]);
    for (auto& x : r) x = F.mul(inv, x);
    for (auto& x : comb) x = F.mul(inv, x);
    rows_.push_back(std::move(r));
    combs_.push_back(std::move(comb));
    pivot_.push_back(piv);
    return std::nullopt;
  }

  bool contains(const Vec& v) const {
    const Field& F = *F_;
    Vec r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = r[pivot_[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) r[j] = F.sub(r[j], F.mul(c, rows_[k][j]));
    }
    for (auto x : r)
      if (x != 0) return false;
    return true;
  }

 private:
  const Field* F_;
  std::size_t dim_;
  std::size_t inserted_ = 0;
  std::vector<Vec> rows_;
  std::vector<Vec> combs_;
  std::vector<std::size_t> pivot_;
};

}  // namespace linalg
}  // namespace skewsf

#endif  // SKEWSF_LINALG_HPP
