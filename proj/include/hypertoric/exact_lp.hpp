#pragma once

// Exact rational linear programming: two-phase tableau simplex with Bland's
// anti-cycling rule.

#include <optional>
#include <vector>

#include "hypertoric/numeric.hpp"

namespace hypertoric {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  RatVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs = 0;
};

/// maximize objective·x subject to constraints; variables are free unless
/// flagged in `nonnegative`.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;  // empty means all free
  std::vector<LinearConstraint> constraints;
  RatVector objective;  // empty means the zero objective (pure feasibility)

  explicit LinearProgram(std::size_t n = 0) : num_vars(n) {}

  void add(RatVector coeffs, Relation rel, Rational rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  RatVector x;

  [[nodiscard]] bool feasible() const { return status != LpStatus::Infeasible; }
};

namespace detail {

class SimplexTableau {
 public:
  // rows: m constraint rows, each of width cols + 1 (last entry = rhs, kept ≥ 0)
  SimplexTableau(std::vector<RatVector> rows, std::vector<std::size_t> basis, std::size_t cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols) {}

  // Maximizes cost·x over the current feasible basis. Columns flagged in
  // `blocked` never enter. Returns false if unbounded.
  bool maximize(const RatVector& cost, const std::vector<bool>& blocked) {
    while (true) {
      // reduced cost r_j = c_j − Σ_i c_{B_i} a_ij
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_ && !entering; ++j) {
        if (blocked[j] || is_basic(j)) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i)
          if (rows_[i][j] != 0 && cost[basis_[i]] != 0) rc -= cost[basis_[i]] * rows_[i][j];
        if (rc > 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t e = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][e] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][e];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, e);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    RatVector& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    for (auto& v : prow)
      if (v != 0) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational f = rows_[i][c];
      RatVector& row = rows_[i];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) row[j] -= f * prow[j];
    }
    basis_[r] = c;
  }

  [[nodiscard]] bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  [[nodiscard]] RatVector solution() const {
    RatVector x(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rows_[i][cols_];
    return x;
  }

  // Pivots artificial columns (index ≥ first_artificial) out of the basis;
  // rows that cannot be repaired are redundant and are removed.
  void expel_artificials(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial && !col; ++j)
        if (rows_[i][j] != 0) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

 private:
  std::vector<RatVector> rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  auto is_nonneg = [&](std::size_t j) { return !lp.nonnegative.empty() && lp.nonnegative[j]; };

  // Column layout: structural columns (x⁺, and x⁻ for free vars), slacks, artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (!is_nonneg(j)) neg_col[j] = cols++;
  }
  const std::size_t m = lp.constraints.size();
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].relation != Relation::Equal) slack_col[i] = cols++;
  const std::size_t first_artificial = cols;

  std::vector<RatVector> rows;
  rows.reserve(m);
  std::vector<bool> needs_artificial(m, false);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = lp.constraints[i];
    if (con.coeffs.size() != n) throw std::invalid_argument("LP constraint length mismatch");
    RatVector row(cols + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (con.coeffs[j] == 0) continue;
      row[pos_col[j]] = con.coeffs[j];
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -con.coeffs[j];
    }
    if (con.relation == Relation::LessEqual) row[slack_col[i]] = 1;
    if (con.relation == Relation::GreaterEqual) row[slack_col[i]] = -1;
    row[cols] = con.rhs;
    if (row[cols] < 0)
      for (auto& v : row) v = -v;
    if (slack_col[i] != SIZE_MAX && row[slack_col[i]] == 1) {
      basis[i] = slack_col[i];
    } else {
      needs_artificial[i] = true;
    }
    rows.push_back(std::move(row));
  }
  std::size_t total = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (needs_artificial[i]) basis[i] = total++;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational rhs = rows[i][cols];
    rows[i].resize(total + 1);
    rows[i][cols] = 0;
    rows[i][total] = rhs;
    if (needs_artificial[i]) rows[i][basis[i]] = 1;
  }

  detail::SimplexTableau tab(std::move(rows), basis, total);
  std::vector<bool> blocked(total, false);

  if (total > first_artificial) {
    RatVector phase1(total);
    for (std::size_t j = first_artificial; j < total; ++j) phase1[j] = -1;
    tab.maximize(phase1, blocked);
    const RatVector x = tab.solution();
    for (std::size_t j = first_artificial; j < total; ++j)
      if (x[j] != 0) return {LpStatus::Infeasible, 0, {}};
    tab.expel_artificials(first_artificial);
    for (std::size_t j = first_artificial; j < total; ++j) blocked[j] = true;
  }

  RatVector cost(total);
  if (!lp.objective.empty()) {
    if (lp.objective.size() != n) throw std::invalid_argument("LP objective length mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      cost[pos_col[j]] = lp.objective[j];
      if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -lp.objective[j];
    }
  }
  const bool bounded = tab.maximize(cost, blocked);
  const RatVector raw = tab.solution();
  LpSolution out;
  out.x.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = raw[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) out.x[j] -= raw[neg_col[j]];
  }
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  if (!lp.objective.empty()) out.value = dot(lp.objective, out.x);
  return out;
}

}  // namespace hypertoric
