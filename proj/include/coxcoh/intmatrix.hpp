#pragma once

// Dense matrices over exact scalars (arbitrary-precision integers or
// rationals) with the elimination routines the rest of the library
// needs: rank, kernel, solving, determinant.  Sizes here are desk
// scale, so everything is straightforward dense arithmetic.

#include <vector>

#include "coxcoh/base.hpp"
#include "coxcoh/errors.hpp"

namespace coxcoh {

template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const T& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (const T& x : a_)
      if (x != 0) return false;
    return true;
  }

  Mat transpose() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Mat operator*(const Mat& o) const {
    require(cols_ == o.rows_, errc::internal, "matrix shape mismatch in product");
    Mat m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
      }
    return m;
  }

  void swap_rows(int i, int j) {
    for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
  }
  void swap_cols(int i, int j) {
    for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
  }

  // append columns of another matrix with the same row count
  Mat hcat(const Mat& o) const {
    require(rows_ == o.rows_, errc::internal, "hcat row mismatch");
    Mat m(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
      for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
  }

  std::vector<T> col(int j) const {
    std::vector<T> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
  return r;
}

// Row-reduce in place; returns the pivot columns.  Rows below the pivot
// rows end up zero.
inline std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != row) m.swap_rows(p, row);
    Rat inv = m.at(row, col);
    for (int j = col; j < m.cols(); ++j) m.at(row, j) /= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(const RatMatrix& m) {
  RatMatrix c = m;
  return static_cast<int>(rref(c).size());
}

inline int rank(const IntMatrix& m) { return rank(to_rational(m)); }

// Basis of the rational null space, one kernel vector per column.
inline RatMatrix kernel_basis(const RatMatrix& m) {
  RatMatrix r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  int nfree = m.cols() - static_cast<int>(pivots.size());
  RatMatrix k(m.cols(), nfree);
  int idx = 0;
  for (int col = 0; col < m.cols(); ++col) {
    if (is_pivot[col]) continue;
    k.at(col, idx) = 1;
    for (int prow = 0; prow < static_cast<int>(pivots.size()); ++prow)
      k.at(pivots[prow], idx) = -r.at(prow, col);
    ++idx;
  }
  return k;
}

// Solve A x = b over the rationals; nullopt when inconsistent.
inline std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b) {
  require(static_cast<int>(b.size()) == a.rows(), errc::internal, "solve shape mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rat> x(a.cols(), Rat(0));
  for (int prow = 0; prow < static_cast<int>(pivots.size()); ++prow)
    x[pivots[prow]] = aug.at(prow, a.cols());
  return x;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), errc::internal, "determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

}  // namespace coxcoh
