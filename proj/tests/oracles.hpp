#pragma once

// Brute-force reference computations. Each one avoids the library routine it
// checks: no Smith reduction, no incremental face insertion, no substitution
// u_i -> a_i. Only the exact LP solver is shared.

#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "hypertoric/exact_lp.hpp"
#include "hypertoric/numeric.hpp"
#include "hypertoric/torus_model.hpp"

namespace oracle {

using namespace hypertoric;

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Plain Gaussian elimination over Q.
inline std::size_t rank(std::vector<RatVector> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline Rational det(std::vector<RatVector> m) {
  const std::size_t n = m.size();
  Rational out = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      out = -out;
    }
    out *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return out;
}

inline Integer integer_det(const IntMatrix& M, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<RatVector> m;
  for (auto r : rows) {
    RatVector v;
    for (auto c : cols) v.emplace_back(M(r, c));
    m.push_back(std::move(v));
  }
  return numerator(det(std::move(m)));
}

/// Invariant factors D_k / D_{k-1}, D_k = gcd of all k x k minors.
inline IntVector invariant_factors(const IntMatrix& M) {
  IntVector out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
    Integer g = 0;
    for_each_subset(M.rows(), k, [&](const std::vector<std::size_t>& r) {
      for_each_subset(M.cols(), k, [&](const std::vector<std::size_t>& c) { g = gcd(g, abs(integer_det(M, r, c))); });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

struct OracleFace {
  std::vector<int> sign;
  std::size_t dim = 0;
  bool bounded = false;
};

/// Every sign vector in {-,0,+}^N tested by LP against the hyperplanes
/// <A_i, p> + h_i = 0.
inline std::vector<OracleFace> faces(const IntMatrix& A, const RatVector& h) {
  const std::size_t n = A.rows(), N = A.cols();
  std::vector<OracleFace> out;
  std::vector<int> s(N, -1);
  auto column = [&](std::size_t i) {
    RatVector v;
    for (std::size_t r = 0; r < n; ++r) v.emplace_back(A(r, i));
    return v;
  };
  auto closure = [&](std::size_t vars) {
    LinearProgram lp(vars);
    for (std::size_t i = 0; i < N; ++i) {
      RatVector row = column(i);
      row.resize(vars);
      if (s[i] == 0) {
        lp.add(row, Relation::Equal, -h[i]);
      } else {
        for (auto& x : row) x *= s[i];
        if (vars > n) row[n] = -1;
        lp.add(row, Relation::GreaterEqual, -h[i] * s[i]);
      }
    }
    return lp;
  };
  while (true) {
    LinearProgram lp = closure(n + 1);
    RatVector cap(n + 1);
    cap[n] = 1;
    lp.add(cap, Relation::LessEqual, 1);
    lp.objective = cap;
    const LpSolution sol = solve_lp(lp);
    const bool strict_needed = std::any_of(s.begin(), s.end(), [](int v) { return v != 0; });
    if (sol.status == LpStatus::Optimal && (!strict_needed || sol.value > 0)) {
      OracleFace f{s, 0, true};
      std::vector<RatVector> eq;
      for (std::size_t i = 0; i < N; ++i)
        if (s[i] == 0) eq.push_back(column(i));
      f.dim = n - rank(eq);
      for (std::size_t k = 0; k < n && f.bounded; ++k)
        for (int dir : {-1, 1}) {
          LinearProgram b = closure(n);
          b.objective.assign(n, Rational(0));
          b.objective[k] = dir;
          if (solve_lp(b).status != LpStatus::Optimal) f.bounded = false;
        }
      out.push_back(std::move(f));
    }
    std::size_t i = 0;
    while (i < N && s[i] == 1) s[i++] = -1;
    if (i == N) break;
    ++s[i];
  }
  return out;
}

inline std::vector<std::size_t> bounded_face_counts(const std::vector<OracleFace>& fs) {
  std::vector<std::size_t> d;
  for (const auto& f : fs) {
    if (!f.bounded) continue;
    if (d.size() <= f.dim) d.resize(f.dim + 1, 0);
    ++d[f.dim];
  }
  return d;
}

/// Zaslavsky: regions of the affine arrangement and bounded regions,
/// from the intersection poset alone.
struct RegionCounts {
  Integer regions = 0;
  Integer bounded = 0;
};

inline RegionCounts zaslavsky(const IntMatrix& A, const RatVector& h) {
  const std::size_t n = A.rows(), N = A.cols();
  Integer chi_minus1 = 0, chi_1 = 0;
  for (std::size_t k = 0; k <= N; ++k)
    for_each_subset(N, k, [&](const std::vector<std::size_t>& S) {
      std::vector<RatVector> lin, aug;
      for (auto i : S) {
        RatVector v;
        for (std::size_t r = 0; r < n; ++r) v.emplace_back(A(r, i));
        lin.push_back(v);
        v.push_back(h[i]);
        aug.push_back(std::move(v));
      }
      const std::size_t r = rank(lin);
      if (r != rank(aug)) return;
      const long sgn = (S.size() % 2) ? -1 : 1;
      chi_1 += sgn;
      chi_minus1 += ((S.size() + r) % 2) ? -1 : 1;
    });
  return {chi_minus1, abs(chi_1)};
}

/// Regions of the central arrangement of hyperplanes normal to `normals`.
inline Integer central_regions(const std::vector<IntVector>& normals) {
  Integer total = 0;
  for (std::size_t k = 0; k <= normals.size(); ++k)
    for_each_subset(normals.size(), k, [&](const std::vector<std::size_t>& S) {
      std::vector<RatVector> rows;
      for (auto i : S) rows.push_back(to_rational(normals[i]));
      total += ((S.size() + rank(rows)) % 2) ? -1 : 1;
    });
  return total;
}

/// Free action test: for every J with {a_j : j in J} a Q-basis of k*, the
/// rows of B together with e_j (j not in J) generate Z^N.
inline std::optional<std::vector<std::size_t>> smoothness_witness(const IntMatrix& B) {
  const std::size_t d = B.rows(), N = B.cols();
  std::optional<std::vector<std::size_t>> bad;
  for_each_subset(N, d, [&](const std::vector<std::size_t>& J) {
    if (bad) return;
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), 0);
    if (integer_det(B, all, J) == 0) return;
    IntMatrix M(N, N);
    std::size_t r = 0;
    for (; r < d; ++r)
      for (std::size_t c = 0; c < N; ++c) M(r, c) = B(r, c);
    for (std::size_t j = 0; j < N; ++j)
      if (!std::binary_search(J.begin(), J.end(), j)) M(r++, j) = 1;
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    if (abs(integer_det(M, idx, idx)) != 1) bad = J;
  });
  return bad;
}

using Monomial = std::vector<unsigned>;

inline void monomials(std::size_t nvars, unsigned degree, Monomial& cur, std::size_t v, std::vector<Monomial>& out) {
  if (v + 1 == nvars) {
    cur[v] = degree;
    out.push_back(cur);
    cur[v] = 0;
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    cur[v] = e;
    monomials(nvars, degree - e, cur, v + 1, out);
  }
  cur[v] = 0;
}

/// dim_Q of Q[u_1..u_N]/(linear forms, squarefree monomials) in each
/// degree 0..top, by row reduction in all N variables.
inline std::vector<std::size_t> hilbert(std::size_t N, const std::vector<IntVector>& linear,
                                        const std::vector<std::vector<std::size_t>>& monos, unsigned top) {
  std::vector<std::size_t> out;
  for (unsigned deg = 0; deg <= top; ++deg) {
    std::vector<Monomial> basis;
    Monomial cur(N, 0);
    if (N == 0) {
      out.push_back(deg == 0 ? 1 : 0);
      continue;
    }
    monomials(N, deg, cur, 0, basis);
    std::map<Monomial, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
    std::vector<RatVector> rows;
    if (deg >= 1) {
      std::vector<Monomial> lower;
      monomials(N, deg - 1, cur, 0, lower);
      for (const auto& l : linear)
        for (const auto& m : lower) {
          RatVector row(basis.size());
          for (std::size_t i = 0; i < N; ++i) {
            if (l[i] == 0) continue;
            Monomial mm = m;
            ++mm[i];
            row[index.at(mm)] += Rational(l[i]);
          }
          rows.push_back(std::move(row));
        }
    }
    for (const auto& m : basis)
      for (const auto& J : monos) {
        if (std::all_of(J.begin(), J.end(), [&](std::size_t i) { return m[i] > 0; })) {
          RatVector row(basis.size());
          row[index.at(m)] = 1;
          rows.push_back(std::move(row));
          break;
        }
      }
    out.push_back(basis.size() - rank(std::move(rows)));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace oracle
