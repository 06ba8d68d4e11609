#pragma once

// Exact integer and rational linear algebra: Smith and Hermite normal forms,
// integer kernels, lattice saturation, rational solving and Gale duals.

#include <optional>
#include <utility>
#include <vector>

#include "hypertoric/numeric.hpp"

namespace hypertoric {

/// U·M·V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... on the
/// diagonal, all d_k > 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  [[nodiscard]] std::size_t rank() const {
    std::size_t r = 0;
    while (r < S.rows() && r < S.cols() && S(r, r) != 0) ++r;
    return r;
  }

  [[nodiscard]] IntVector invariant_factors() const {
    IntVector out;
    for (std::size_t r = 0; r < rank(); ++r) out.push_back(S(r, r));
    return out;
  }
};

namespace detail {

// Position of the smallest nonzero |entry| in S[t.., t..]; ties go to the
// smaller row, then the smaller column.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& S, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs = 0;
  for (std::size_t i = t; i < S.rows(); ++i)
    for (std::size_t j = t; j < S.cols(); ++j) {
      if (S(i, j) == 0) continue;
      Integer a = abs(S(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
      }
    }
  return best;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithDecomposition out{IntMatrix::identity(m), M, IntMatrix::identity(n)};
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool done = false;
    while (!done) {
      const auto pivot = detail::smallest_pivot(S, t);
      if (!pivot) return out;
      S.swap_rows(t, pivot->first);
      U.swap_rows(t, pivot->first);
      S.swap_cols(t, pivot->second);
      V.swap_cols(t, pivot->second);

      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        const Integer q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        const Integer q = S(t, j) / S(t, t);
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) residue = true;
      }
      if (residue) continue;

      // Row and column t are clear; enforce divisibility of the trailing block.
      done = true;
      for (std::size_t i = t + 1; i < m && done; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row_multiple(t, i, Integer(1));
            U.add_row_multiple(t, i, Integer(1));
            done = false;
            break;
          }
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of M:
/// echelon, positive pivots, entries above a pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis.
inline IntMatrix hermite_normal_form(const IntMatrix& M) {
  IntMatrix H = M;
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (!best || abs(H(i, c)) < abs(H(*best, c)))) best = i;
      if (!best) break;
      H.swap_rows(r, *best);
      bool residue = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        H.add_row_multiple(i, r, Integer(-(H(i, c) / H(r, c))));
        if (H(i, c) != 0) residue = true;
      }
      if (!residue) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) H.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = H(i, c) / H(r, c);
      if (H(i, c) - q * H(r, c) < 0) q -= 1;
      H.add_row_multiple(i, r, Integer(-q));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
  return out;
}

/// Rank over Q.
template <typename T>
std::size_t rank(const Matrix<T>& M) {
  RatMatrix A(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) A(i, j) = Rational(M(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    A.swap_rows(r, p);
    for (std::size_t i = r + 1; i < A.rows(); ++i) {
      if (A(i, c) == 0) continue;
      const Rational f = A(i, c) / A(r, c);
      A.add_row_multiple(i, r, Rational(-f));
    }
    ++r;
  }
  return r;
}

/// Exact determinant of a square integer matrix (Bareiss elimination).
inline Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  Integer prev = 1;
  int flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      A.swap_rows(k, p);
      flip = -flip;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return flip * A(n - 1, n - 1);
}

/// ℤ-basis (HNF-reduced, one vector per row) of {m ∈ ℤ^cols : M·m = 0}.
inline IntMatrix integer_kernel_matrix(const IntMatrix& M) {
  const SmithDecomposition snf = smith_normal_form(M);
  const std::size_t r = snf.rank(), n = M.cols();
  IntMatrix basis(n - r, n);
  for (std::size_t k = r; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(k - r, i) = snf.V(i, k);
  return hermite_normal_form(basis);
}

inline std::vector<IntVector> integer_kernel_basis(const IntMatrix& M) {
  return integer_kernel_matrix(M).row_list();
}

/// Saturation of the row lattice: ℚ-row-space ∩ ℤ^cols, as an HNF basis.
inline IntMatrix saturate_rows(const IntMatrix& M) {
  return integer_kernel_matrix(integer_kernel_matrix(M));
}

/// True iff the row lattice of a full-row-rank matrix is saturated.
inline bool is_saturated(const IntMatrix& M) {
  const SmithDecomposition snf = smith_normal_form(M);
  if (snf.rank() != M.rows()) throw PreconditionError("row rank deficient");
  for (const auto& f : snf.invariant_factors())
    if (f != 1) return false;
  return true;
}

namespace detail {

// Reduced row echelon form of [M | b]; returns a particular solution or none.
inline std::optional<RatVector> solve_by_elimination(RatMatrix A, RatVector b) {
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && A(p, c) == 0) ++p;
    if (p == m) continue;
    A.swap_rows(r, p);
    std::swap(b[r], b[p]);
    const Rational inv = 1 / A(r, c);
    for (std::size_t j = 0; j < n; ++j) A(r, j) *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A(i, c) == 0) continue;
      const Rational f = A(i, c);
      A.add_row_multiple(i, r, Rational(-f));
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return x;
}

}  // namespace detail

/// Some rational x with M·x = b, or none if the system is inconsistent.
/// For full-row-rank M the canonical least-norm solution Mᵀ(MMᵀ)⁻¹b is used.
template <typename T>
std::optional<RatVector> solve_rational(const Matrix<T>& M, const RatVector& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("solve_rational: length mismatch");
  RatMatrix A(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) A(i, j) = Rational(M(i, j));
  if (rank(A) == A.rows()) {
    const RatMatrix gram = A * A.transpose();
    const auto y = detail::solve_by_elimination(gram, b);
    if (!y) return std::nullopt;  // unreachable for full row rank
    return A.transpose() * *y;
  }
  return detail::solve_by_elimination(A, b);
}

/// Gale dual of a saturated full-row-rank d×N matrix B: an n×N integer
/// matrix A (n = N − d) with A·Bᵀ = 0 whose map ℤ^N → ℤ^n is onto.
inline IntMatrix gale_dual(const IntMatrix& B) {
  if (!is_saturated(B)) throw PreconditionError("saturate first");
  return integer_kernel_matrix(B);
}

}  // namespace hypertoric
