#pragma once

// Smith normal form over the integers with unimodular transforms,
// U * M * V = D.  Pivoting on a minimal-absolute-value entry keeps the
// intermediate entries small; arbitrary-precision integers make blow-up
// harmless in any case.

#include <cstdlib>

#include "coxcoh/intmatrix.hpp"

namespace coxcoh {

struct SNFResult {
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix u;  // row transform, |det| = 1
  IntMatrix v;  // column transform, |det| = 1

  std::vector<Int> invariant_factors() const {
    std::vector<Int> out;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n; ++i)
      if (d.at(i, i) != 0) out.push_back(d.at(i, i));
    return out;
  }
  int rank() const { return static_cast<int>(invariant_factors().size()); }
};

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline SNFResult smith_normal_form(const IntMatrix& m, bool verify = true) {
  SNFResult r;
  r.d = m;
  r.u = IntMatrix::identity(m.rows());
  r.v = IntMatrix::identity(m.cols());
  IntMatrix& d = r.d;
  int n = std::min(d.rows(), d.cols());

  auto add_row = [&](int dst, int src, const Int& f) {  // row dst += f * row src
    for (int j = 0; j < d.cols(); ++j) d.at(dst, j) += f * d.at(src, j);
    for (int j = 0; j < r.u.cols(); ++j) r.u.at(dst, j) += f * r.u.at(src, j);
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int i = 0; i < d.rows(); ++i) d.at(i, dst) += f * d.at(i, src);
    for (int i = 0; i < r.v.rows(); ++i) r.v.at(i, dst) += f * r.v.at(i, src);
  };
  auto swap_row = [&](int i, int j) {
    if (i == j) return;
    d.swap_rows(i, j);
    r.u.swap_rows(i, j);
  };
  auto swap_col = [&](int i, int j) {
    if (i == j) return;
    d.swap_cols(i, j);
    r.v.swap_cols(i, j);
  };
  auto negate_row = [&](int i) {
    for (int j = 0; j < d.cols(); ++j) d.at(i, j) = -d.at(i, j);
    for (int j = 0; j < r.u.cols(); ++j) r.u.at(i, j) = -r.u.at(i, j);
  };

  for (int k = 0; k < n; ++k) {
    while (true) {
      // minimal |entry| pivot in the trailing submatrix
      int pi = -1, pj = -1;
      for (int i = k; i < d.rows(); ++i)
        for (int j = k; j < d.cols(); ++j)
          if (d.at(i, j) != 0 &&
              (pi < 0 || abs_int(d.at(i, j)) < abs_int(d.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;  // trailing submatrix is zero
      swap_row(k, pi);
      swap_col(k, pj);

      bool clean = true;
      for (int i = k + 1; i < d.rows(); ++i) {
        if (d.at(i, k) == 0) continue;
        Int q = d.at(i, k) / d.at(k, k);
        add_row(i, k, -q);
        if (d.at(i, k) != 0) clean = false;  // remainder becomes a smaller pivot
      }
      for (int j = k + 1; j < d.cols(); ++j) {
        if (d.at(k, j) == 0) continue;
        Int q = d.at(k, j) / d.at(k, k);
        add_col(j, k, -q);
        if (d.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // force divisibility: the pivot must divide every trailing entry
      bool divides = true;
      for (int i = k + 1; i < d.rows() && divides; ++i)
        for (int j = k + 1; j < d.cols() && divides; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            add_row(k, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d.at(k, k) < 0) negate_row(k);
  }
done:
  if (verify) {
    require(r.u * m * r.v == d, errc::internal, "SNF transform check failed");
    for (int i = 0; i + 1 < n; ++i) {
      if (d.at(i + 1, i + 1) == 0) continue;
      require(d.at(i, i) != 0 && d.at(i + 1, i + 1) % d.at(i, i) == 0, errc::internal,
              "SNF divisibility chain failed");
    }
  }
  return r;
}

}  // namespace coxcoh
