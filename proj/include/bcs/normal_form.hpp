#pragma once

// Smith and Hermite normal forms over arbitrary-precision integers.
// Both are templated on the scalar so tests can run them on small builtin
// integer matrices as well; all production callers use bcs::Integer.

#include "bcs/integer_ops.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace bcs {

template <class Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U;  // rows x rows, unimodular
  Matrix<Scalar> D;  // diagonal, d_1 | d_2 | ..., nonnegative
  Matrix<Scalar> V;  // cols x cols, unimodular
  Matrix<Scalar> V_inverse;
};

template <class Scalar>
struct HermiteDecomposition {
  Matrix<Scalar> H;  // rank x cols, row echelon, canonical
  Matrix<Scalar> U;  // rows x rows unimodular; U * M = [H; 0]
  Eigen::Index rank = 0;
};

namespace detail {

// Smallest nonzero |entry| of the trailing block, ties broken row-major.
template <class Scalar>
std::optional<std::pair<Eigen::Index, Eigen::Index>> smallest_pivot(const Matrix<Scalar>& A,
                                                                    Eigen::Index k) {
  std::optional<std::pair<Eigen::Index, Eigen::Index>> best;
  Scalar best_abs = 0;
  for (Eigen::Index i = k; i < A.rows(); ++i) {
    for (Eigen::Index j = k; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Scalar v = abs_value(A(i, j));
      if (!best || v < best_abs) {
        best = std::make_pair(i, j);
        best_abs = v;
      }
    }
  }
  return best;
}

}  // namespace detail

/// U * M * V = D with D in Smith normal form.
template <class Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = M.rows(), n = M.cols();
  SmithDecomposition<Scalar> out{Matrix<Scalar>::Identity(m, m), M, Matrix<Scalar>::Identity(n, n),
                                 Matrix<Scalar>::Identity(n, n)};
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;
  auto& Vinv = out.V_inverse;

  for (Eigen::Index k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      auto pivot = detail::smallest_pivot(D, k);
      if (!pivot) return out;  // trailing block is zero
      auto [pi, pj] = *pivot;
      if (pi != k) {
        D.row(k).swap(D.row(pi));
        U.row(k).swap(U.row(pi));
      }
      if (pj != k) {
        D.col(k).swap(D.col(pj));
        V.col(k).swap(V.col(pj));
        Vinv.row(k).swap(Vinv.row(pj));
      }

      bool clean = true;
      for (Eigen::Index i = k + 1; i < m; ++i) {
        if (D(i, k) == 0) continue;
        Scalar q = D(i, k) / D(k, k);
        D.row(i) -= q * D.row(k);
        U.row(i) -= q * U.row(k);
        if (D(i, k) != 0) clean = false;
      }
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (D(k, j) == 0) continue;
        Scalar q = D(k, j) / D(k, k);
        D.col(j) -= q * D.col(k);
        V.col(j) -= q * V.col(k);
        Vinv.row(k) += q * Vinv.row(j);
        if (D(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pull in any entry the pivot does not divide.
      bool divides_all = true;
      for (Eigen::Index i = k + 1; i < m && divides_all; ++i) {
        for (Eigen::Index j = k + 1; j < n; ++j) {
          if (D(i, j) % D(k, k) != 0) {
            D.row(k) += D.row(i);
            U.row(k) += U.row(i);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    if (D(k, k) < 0) {
      D.row(k) = -D.row(k);
      U.row(k) = -U.row(k);
    }
  }
  return out;
}

/// Row-style HNF with the unimodular transform: U * M = [H; 0].
/// Pivots are positive and entries above a pivot lie in [0, pivot).
template <class Derived>
HermiteDecomposition<typename Derived::Scalar> hermite_decomposition(
    const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = M.rows(), n = M.cols();
  Matrix<Scalar> A = M;
  Matrix<Scalar> U = Matrix<Scalar>::Identity(m, m);
  Eigen::Index r = 0;
  std::vector<Eigen::Index> pivot_cols;

  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    for (Eigen::Index i = r + 1; i < m; ++i) {
      if (A(i, c) == 0) continue;
      if (A(r, c) == 0) {
        A.row(r).swap(A.row(i));
        U.row(r).swap(U.row(i));
        continue;
      }
      Scalar a = A(r, c), b = A(i, c);
      auto [g, x, y] = extended_gcd(a, b);
      Scalar ag = a / g, bg = b / g;
      Matrix<Scalar> row_r = x * A.row(r) + y * A.row(i);
      Matrix<Scalar> row_i = -bg * A.row(r) + ag * A.row(i);
      A.row(r) = row_r;
      A.row(i) = row_i;
      Matrix<Scalar> u_r = x * U.row(r) + y * U.row(i);
      Matrix<Scalar> u_i = -bg * U.row(r) + ag * U.row(i);
      U.row(r) = u_r;
      U.row(i) = u_i;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) {
      A.row(r) = -A.row(r);
      U.row(r) = -U.row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      Scalar q = floor_div(A(i, c), A(r, c));
      if (q == 0) continue;
      A.row(i) -= q * A.row(r);
      U.row(i) -= q * U.row(r);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  HermiteDecomposition<Scalar> out;
  out.rank = r;
  out.H = A.topRows(r);
  out.U = std::move(U);
  return out;
}

/// Canonical row basis (zero rows dropped) of the lattice spanned by the rows of M.
template <class Derived>
Matrix<typename Derived::Scalar> hermite_normal_form(const Eigen::MatrixBase<Derived>& M) {
  return hermite_decomposition(M).H;
}

template <class Derived>
typename Derived::Scalar integer_determinant(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (M.rows() == 0) return Scalar(1);
  // Bareiss fraction-free elimination.
  Matrix<Scalar> A = M;
  const Eigen::Index n = A.rows();
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        if (A(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return Scalar(0);
      A.row(k).swap(A.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

}  // namespace bcs
