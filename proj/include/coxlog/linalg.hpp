#pragma once
#include <optional>
#include <vector>

#include "coxlog/eigen_support.hpp"

// Exact linear algebra over the engine's scalar types.  Pivoting is purely
// structural (first nonzero), which is the right notion when "large" has no
// meaning and zero tests are exact.

namespace coxlog {

namespace detail {

inline bool entry_is_zero(const QuadScalar& x) { return x.is_zero(); }
inline bool entry_is_zero(const MultiPoly& x) { return x.is_zero(); }
inline bool entry_is_zero(const RatFunc& x) { return x.is_zero(); }

inline QuadScalar entry_inverse(const QuadScalar& x) { return x.inverse(); }
inline RatFunc entry_inverse(const RatFunc& x) { return x.inverse(); }

inline QuadScalar exact_div(const QuadScalar& a, const QuadScalar& b) { return a / b; }
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw error("exact_div: inexact polynomial division");
  return *q;
}

}  // namespace detail

template <typename K>
struct LinearSolve {
  int rank = 0;
  std::optional<VecX<K>> solution;   // one particular solution, if consistent
  std::vector<VecX<K>> kernel;       // basis of the homogeneous solutions
};

// Gauss-Jordan over a field.  A is m x n, b is m; solves A x = b and reports
// rank plus a kernel basis in reduced echelon form (canonical for the given
// column order).
template <typename K>
LinearSolve<K> solve_linear(MatX<K> A, VecX<K> b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) throw error("solve_linear: dimension mismatch");
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (!detail::entry_is_zero(A(i, col))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) {
      A.row(p).swap(A.row(row));
      std::swap(b(p), b(row));
    }
    K inv = detail::entry_inverse(A(row, col));
    for (int j = col; j < n; ++j) A(row, j) = A(row, j) * inv;
    b(row) = b(row) * inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || detail::entry_is_zero(A(i, col))) continue;
      K f = A(i, col);
      for (int j = col; j < n; ++j) A(i, j) = A(i, j) - f * A(row, j);
      b(i) = b(i) - f * b(row);
    }
    pivot_col.push_back(col);
    ++row;
  }

  LinearSolve<K> out;
  out.rank = row;
  bool consistent = true;
  for (int i = row; i < m; ++i)
    if (!detail::entry_is_zero(b(i))) consistent = false;

  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;

  if (consistent) {
    VecX<K> x(n);
    for (int j = 0; j < n; ++j) x(j) = K(0);
    for (int r = 0; r < row; ++r) x(pivot_col[static_cast<size_t>(r)]) = b(r);
    out.solution = std::move(x);
  }

  for (int j = 0; j < n; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    VecX<K> v(n);
    for (int t = 0; t < n; ++t) v(t) = K(0);
    v(j) = K(1);
    for (int r = 0; r < row; ++r)
      v(pivot_col[static_cast<size_t>(r)]) = K(0) - A(r, j);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

template <typename K>
std::vector<VecX<K>> kernel_basis(const MatX<K>& A) {
  VecX<K> b(A.rows());
  for (int i = 0; i < A.rows(); ++i) b(i) = K(0);
  return solve_linear(A, b).kernel;
}

template <typename K>
int matrix_rank(const MatX<K>& A) {
  VecX<K> b(A.rows());
  for (int i = 0; i < A.rows(); ++i) b(i) = K(0);
  return solve_linear(A, b).rank;
}

template <typename K>
MatX<K> field_inverse(const MatX<K>& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw error("field_inverse: matrix not square");
  MatX<K> aug(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      aug(i, j) = A(i, j);
      aug(i, n + j) = K(i == j ? 1 : 0);
    }
  int row = 0;
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (!detail::entry_is_zero(aug(i, col))) {
        p = i;
        break;
      }
    if (p < 0) throw error("field_inverse: singular matrix");
    if (p != row) aug.row(p).swap(aug.row(row));
    K inv = detail::entry_inverse(aug(row, col));
    for (int j = 0; j < 2 * n; ++j) aug(row, j) = aug(row, j) * inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || detail::entry_is_zero(aug(i, col))) continue;
      K f = aug(i, col);
      for (int j = 0; j < 2 * n; ++j) aug(i, j) = aug(i, j) - f * aug(row, j);
    }
    ++row;
  }
  return aug.rightCols(n);
}

// Fraction-free Bareiss determinant over an integral domain.  All divisions
// are exact by the Sylvester identity.  Works for QuadScalar and MultiPoly.
template <typename R>
R bareiss_det(MatX<R> M) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw error("bareiss_det: matrix not square");
  if (n == 0) return R(1);
  if (n == 1) return M(0, 0);
  int sign = 1;
  R prev = R(1);
  for (int k = 0; k + 1 < n; ++k) {
    if (detail::entry_is_zero(M(k, k))) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!detail::entry_is_zero(M(i, k))) {
          p = i;
          break;
        }
      if (p < 0) return R(0);
      M.row(p).swap(M.row(k));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        M(i, j) = detail::exact_div(M(i, j) * M(k, k) - M(i, k) * M(k, j), prev);
    prev = M(k, k);
  }
  R d = M(n - 1, n - 1);
  return sign < 0 ? R(0) - d : d;
}

// Determinant of a RatFunc matrix by clearing one common denominator per
// column and running Bareiss on the cleared polynomial matrix.
RatFunc ratfunc_matrix_det(const MatX<RatFunc>& M);

}  // namespace coxlog
