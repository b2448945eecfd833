#pragma once

#include <optional>
#include <vector>

#include "quivfix/error.hpp"

namespace quivfix {

/// Dense matrix over an exact field element type K (Fp or Scalar). K must
/// provide add/sub/mul/neg/inv/conj, is_zero/is_one and ==. Matrices may
/// have zero rows or columns; such products behave like empty sums.
template <class K>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<K> a;  // row-major

  Mat() = default;
  Mat(int r, int c, const K& zero) : rows(r), cols(c), a(size_t(r) * c, zero) {}

  K& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const K& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  static Mat identity(int n, const K& one) {
    K zero = one.sub(one);
    Mat m(n, n, zero);
    for (int i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  Mat transpose() const {
    if (rows == 0 || cols == 0) {
      Mat t;
      t.rows = cols;
      t.cols = rows;
      return t;
    }
    Mat t(cols, rows, a[0].sub(a[0]));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat conj() const {
    Mat m = *this;
    for (auto& x : m.a) x = x.conj();
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        if (i == j && !at(i, j).is_one()) return false;
        if (i != j && !at(i, j).is_zero()) return false;
      }
    return true;
  }

  /// True when the matrix is t*Id; returns t through `scale`.
  bool is_scalar(K* scale = nullptr) const {
    if (rows != cols) return false;
    if (rows == 0) return true;
    const K& t = at(0, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        if (i == j && !(at(i, j) == t)) return false;
        if (i != j && !at(i, j).is_zero()) return false;
      }
    if (scale) *scale = t;
    return true;
  }
};

template <class K>
Mat<K> mat_add(const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail(Errc::ShapeMismatch, "matrix add");
  Mat<K> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i].add(y.a[i]);
  return r;
}

template <class K>
Mat<K> mat_sub(const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail(Errc::ShapeMismatch, "matrix sub");
  Mat<K> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i].sub(y.a[i]);
  return r;
}

template <class K>
Mat<K> mat_neg(const Mat<K>& x) {
  Mat<K> r = x;
  for (auto& v : r.a) v = v.neg();
  return r;
}

template <class K>
Mat<K> mat_scale(const K& s, const Mat<K>& x) {
  Mat<K> r = x;
  for (auto& v : r.a) v = s.mul(v);
  return r;
}

template <class K>
Mat<K> mat_mul(const Mat<K>& x, const Mat<K>& y) {
  if (x.cols != y.rows) fail(Errc::ShapeMismatch, "matrix mul");
  K zero = x.a.empty() ? (y.a.empty() ? K() : y.a[0].sub(y.a[0])) : x.a[0].sub(x.a[0]);
  Mat<K> r(x.rows, y.cols, zero);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const K& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) = r.at(i, j).add(xik.mul(y.at(k, j)));
    }
  return r;
}

template <class K>
K mat_trace(const Mat<K>& x, const K& zero) {
  K t = zero;
  for (int i = 0; i < x.rows && i < x.cols; ++i) t = t.add(x.at(i, i));
  return t;
}

/// In-place reduced row echelon form. Returns the pivot columns.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    K inv = m.at(row, col).inv();
    for (int j = col; j < m.cols; ++j) m.at(row, j) = inv.mul(m.at(row, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j).sub(f.mul(m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int mat_rank(Mat<K> m) {
  return int(rref(m).size());
}

/// Basis of the solution space of m x = 0, one column vector per basis
/// element, echelonized over the free variables.
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> m, const K& zero, const K& one) {
  std::vector<int> pivots = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<K>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols, zero);
    v[free] = one;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m.at(int(r), free).neg();
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
K mat_det(Mat<K> m, const K& zero, const K& one) {
  if (m.rows != m.cols) fail(Errc::ShapeMismatch, "det of non-square matrix");
  int n = m.rows;
  K det = one;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return zero;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = det.neg();
    }
    det = det.mul(m.at(col, col));
    K inv = m.at(col, col).inv();
    for (int i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      K f = m.at(i, col).mul(inv);
      for (int j = col; j < n; ++j) m.at(i, j) = m.at(i, j).sub(f.mul(m.at(col, j)));
    }
  }
  return det;
}

template <class K>
std::optional<Mat<K>> mat_inverse(const Mat<K>& m, const K& zero, const K& one) {
  if (m.rows != m.cols) fail(Errc::ShapeMismatch, "inverse of non-square matrix");
  int n = m.rows;
  Mat<K> aug(n, 2 * n, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = one;
  }
  std::vector<int> piv = rref(aug);
  if (int(piv.size()) != n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  Mat<K> inv(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/// Rank of [span | v]: true iff v lies in the column span of `span`.
template <class K>
bool in_column_span(const Mat<K>& span, const std::vector<K>& v, const K& zero) {
  Mat<K> aug(span.rows, span.cols + 1, zero);
  for (int i = 0; i < span.rows; ++i) {
    for (int j = 0; j < span.cols; ++j) aug.at(i, j) = span.at(i, j);
    aug.at(i, span.cols) = v[size_t(i)];
  }
  Mat<K> sp = span;
  return mat_rank(std::move(sp)) == mat_rank(std::move(aug));
}

}  // namespace quivfix
