#pragma once

// Chambers of k* for fixed β, crossings of a single wall (isomorphism or
// Mukai flop), the fixed-locus spec V_0 and the period map.

#include <optional>
#include <string>
#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/exact_lp.hpp"
#include "hypertoric/torus_model.hpp"

namespace hypertoric {

/// Walls W_s with β ∈ W_s ⊗ ℂ.
inline std::vector<std::size_t> active_walls(const std::vector<Wall>& walls, const Parameter& param) {
  std::vector<std::size_t> out;
  for (const auto& w : walls)
    if (dot(param.beta_re, w.normal) == 0 && dot(param.beta_im, w.normal) == 0) out.push_back(w.id);
  return out;
}

struct Chamber {
  SignVector sign;  // over the active walls, in order
  IntVector witness;
};

struct ChamberStructure {
  std::vector<std::size_t> active;
  std::vector<Chamber> chambers;
};

namespace detail {

// An integer α with sign⟨α, Y_s⟩ = signs[k] for the first signs.size()
// active walls, or none.
inline std::optional<IntVector> chamber_witness(const std::vector<Wall>& walls, const std::vector<std::size_t>& active,
                                                const SignVector& signs, std::size_t d) {
  LinearProgram lp(d + 1);
  for (std::size_t k = 0; k < signs.size(); ++k) {
    RatVector row(d + 1);
    for (std::size_t r = 0; r < d; ++r) row[r] = Rational(walls[active[k]].normal[r]) * signs[k];
    row[d] = -1;
    lp.add(std::move(row), Relation::GreaterEqual, 0);
  }
  RatVector t(d + 1);
  t[d] = 1;
  lp.add(t, Relation::LessEqual, 1);
  for (std::size_t r = 0; r < d; ++r) {
    RatVector e(d + 1);
    e[r] = 1;
    lp.add(e, Relation::LessEqual, d + 1);
    lp.add(e, Relation::GreaterEqual, -static_cast<long>(d + 1));
  }
  lp.objective = t;
  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal || s.value <= 0) return std::nullopt;
  return primitive_integer(RatVector(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(d)));
}

}  // namespace detail

/// Depth-first over the active walls, pruning unrealizable prefixes.
inline ChamberStructure enumerate_chambers(const TorusSpec& spec, const std::vector<Wall>& walls,
                                           const Parameter& param) {
  ChamberStructure cs;
  cs.active = active_walls(walls, param);
  const std::size_t d = spec.rank();
  std::vector<SignVector> stack{SignVector{}};
  while (!stack.empty()) {
    SignVector prefix = std::move(stack.back());
    stack.pop_back();
    auto w = detail::chamber_witness(walls, cs.active, prefix, d);
    if (!w) continue;
    if (prefix.size() == cs.active.size()) {
      cs.chambers.push_back({std::move(prefix), std::move(*w)});
      continue;
    }
    for (int s : {-1, 1}) {
      SignVector next = prefix;
      next.push_back(s);
      stack.push_back(std::move(next));
    }
  }
  std::sort(cs.chambers.begin(), cs.chambers.end(), [](const Chamber& a, const Chamber& b) { return b.sign < a.sign; });
  return cs;
}

struct ChamberLocation {
  std::optional<SignVector> sign;
  std::vector<std::size_t> on_walls;  // wall ids with ⟨α, Y_s⟩ = 0
};

inline ChamberLocation chamber_of(const std::vector<Wall>& walls, const std::vector<std::size_t>& active,
                                  const RatVector& alpha) {
  ChamberLocation loc;
  SignVector s;
  for (auto id : active) {
    const int v = sign(dot(alpha, walls[id].normal));
    if (v == 0) loc.on_walls.push_back(id);
    s.push_back(v);
  }
  if (loc.on_walls.empty()) loc.sign = std::move(s);
  return loc;
}

/// V_0: K/H_s acting on the coordinates off J_s.
struct FixedLocus {
  TorusSpec spec;
  std::vector<std::size_t> columns;  // original indices of the surviving coordinates
};

inline FixedLocus fixed_locus_spec(const TorusSpec& spec, const Wall& wall) {
  FixedLocus f;
  for (std::size_t i = 0; i < spec.ambient_rank(); ++i)
    if (!std::binary_search(wall.circuit.begin(), wall.circuit.end(), i)) f.columns.push_back(i);
  const IntMatrix restricted = spec.basis().select_columns(f.columns);
  IntMatrix b = f.columns.empty() ? IntMatrix(0, 0) : saturate_rows(restricted);
  f.spec = TorusSpec::from_basis(b);
  return f;
}

/// Coordinates of α ∈ W_s in the basis dual to the rows of the V_0 basis:
/// each row b' is the image of some y ∈ k, and α' = ⟨α, y⟩.
inline RatVector restrict_to_fixed_locus(const TorusSpec& spec, const FixedLocus& f, const RatVector& alpha) {
  const IntMatrix restricted_t = spec.basis().select_columns(f.columns).transpose();
  RatVector out;
  for (std::size_t r = 0; r < f.spec.rank(); ++r) {
    const auto y = solve_rational(restricted_t, to_rational(f.spec.basis().row(r)));
    if (!y) throw std::logic_error("fixed-locus row outside the image of k");
    out.push_back(dot(alpha, *y));
  }
  return out;
}

enum class CrossingKind { Isomorphism, MukaiFlop };

inline const char* to_string(CrossingKind k) { return k == CrossingKind::Isomorphism ? "isomorphism" : "mukai_flop"; }

struct CrossingReport {
  std::size_t wall = 0;
  std::vector<std::size_t> circuit;
  CrossingKind kind = CrossingKind::Isomorphism;
  std::optional<std::size_t> fiber_projective_dim;  // fiber ℂP^{|J|−1}
  std::optional<std::size_t> codim;
  RatVector alpha_on_wall;  // the crossing point α_0 ∈ W_s
  FixedLocus v0;
  Parameter v0_parameter;
};

namespace detail {

inline void require_regular(const std::vector<Wall>& walls, const Parameter& beta, const RatVector& alpha) {
  Parameter p{alpha, beta.beta_re, beta.beta_im};
  if (!is_regular_value(walls, p).regular) throw PreconditionError("not a regular value");
}

}  // namespace detail

inline CrossingReport classify_crossing(const TorusSpec& spec, const std::vector<Wall>& walls, const Parameter& param,
                                        const RatVector& alpha_plus, const RatVector& alpha_minus) {
  if (alpha_plus.size() != spec.rank() || alpha_minus.size() != spec.rank())
    throw PreconditionError("alpha must have length d");
  detail::require_regular(walls, param, alpha_plus);
  detail::require_regular(walls, param, alpha_minus);
  const auto active = active_walls(walls, param);
  const auto plus = chamber_of(walls, active, alpha_plus), minus = chamber_of(walls, active, alpha_minus);
  if (!plus.sign || !minus.sign) throw PreconditionError("not a regular value");
  std::vector<std::size_t> differ;
  for (std::size_t k = 0; k < active.size(); ++k)
    if ((*plus.sign)[k] != (*minus.sign)[k]) differ.push_back(active[k]);
  if (differ.empty()) throw PreconditionError("no wall crossed");
  if (differ.size() > 1) throw PreconditionError("not adjacent");

  const Wall& w = walls[differ[0]];
  CrossingReport rep;
  rep.wall = w.id;
  rep.circuit = w.circuit;
  const std::size_t J = w.circuit.size();
  rep.kind = J >= 3 ? CrossingKind::MukaiFlop : CrossingKind::Isomorphism;
  if (rep.kind == CrossingKind::MukaiFlop) {
    rep.fiber_projective_dim = J - 1;
    rep.codim = J - 1;
  }
  const Rational yp = dot(alpha_plus, w.normal), ym = dot(alpha_minus, w.normal);
  const Rational t = yp / (yp - ym);
  for (std::size_t r = 0; r < spec.rank(); ++r)
    rep.alpha_on_wall.push_back(alpha_plus[r] + t * (alpha_minus[r] - alpha_plus[r]));
  rep.v0 = fixed_locus_spec(spec, w);
  rep.v0_parameter = {restrict_to_fixed_locus(spec, rep.v0, rep.alpha_on_wall),
                      restrict_to_fixed_locus(spec, rep.v0, param.beta_re),
                      restrict_to_fixed_locus(spec, rep.v0, param.beta_im)};
  return rep;
}

/// [ω_1] = κ(α) and [ω_ℂ] = κ(β) in the basis dual to the rows of B.
struct PeriodReport {
  RatVector omega_1;
  RatVector omega_re;
  RatVector omega_im;
};

inline PeriodReport period(const TorusSpec& spec, const std::vector<Wall>& walls, const Parameter& param) {
  if (!spec.empty_hyperplanes().empty()) throw PreconditionError("period map hypothesis violated");
  if (!is_regular_value(walls, param).regular) throw PreconditionError("not a regular value");
  return {param.alpha, param.beta_re, param.beta_im};
}

}  // namespace hypertoric
