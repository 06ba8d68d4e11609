#pragma once

// Moment maps, the exact semistability and closed-orbit tests, destabilizing
// directions and a numerical Kempf–Ness descent.
//
// Units: α̂ = α/π, β̂ = β/(−2π√−1) and X̃ = 4πX, so that
//   F(X) = ⟨α̂, X⟩ + Σ|z_i|² e^{−⟨a_i,X⟩} + Σ|w_i|² e^{⟨a_i,X⟩}
// with ∇F = α̂ − μ̂_1 evaluated along the orbit.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypertoric/exact_lp.hpp"
#include "hypertoric/torus_model.hpp"

namespace hypertoric {

/// |z_i|² and |w_i|² as exact rationals.
struct ExactModuli {
  RatVector z2;
  RatVector w2;
};

struct NumericPoint {
  std::vector<std::complex<double>> z;
  std::vector<std::complex<double>> w;

  [[nodiscard]] ExactModuli moduli() const {
    ExactModuli m;
    for (const auto& c : z) m.z2.emplace_back(std::norm(c));
    for (const auto& c : w) m.w2.emplace_back(std::norm(c));
    return m;
  }
};

namespace detail {

inline void check_lengths(const ExactModuli& m, const TorusSpec& spec) {
  if (m.z2.size() != spec.ambient_rank() || m.w2.size() != spec.ambient_rank())
    throw PreconditionError("point must have N coordinates");
  for (std::size_t i = 0; i < m.z2.size(); ++i)
    if (m.z2[i] < 0 || m.w2[i] < 0) throw PreconditionError("moduli must be nonnegative");
}

// ±a_i for every nonzero coordinate: a_i for z_i ≠ 0, −a_i for w_i ≠ 0.
inline std::vector<IntVector> active_generators(const ExactModuli& m, const TorusSpec& spec) {
  std::vector<IntVector> g;
  for (std::size_t i = 0; i < spec.ambient_rank(); ++i) {
    if (m.z2[i] > 0) g.push_back(spec.weight(i));
    if (m.w2[i] > 0) {
      IntVector v = spec.weight(i);
      for (auto& x : v) x = -x;
      g.push_back(std::move(v));
    }
  }
  return g;
}

// {c ≥ 0 : Σ c_k g_k = α}
inline LinearProgram cone_membership(const std::vector<IntVector>& g, const RatVector& alpha) {
  LinearProgram lp(g.size());
  lp.nonnegative.assign(g.size(), true);
  for (std::size_t r = 0; r < alpha.size(); ++r) {
    RatVector row(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) row[k] = Rational(g[k][r]);
    lp.add(std::move(row), Relation::Equal, alpha[r]);
  }
  return lp;
}

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace detail

/// μ̂_1 = Σ (|z_i|² − |w_i|²) a_i
inline RatVector moment_real(const ExactModuli& m, const TorusSpec& spec) {
  detail::check_lengths(m, spec);
  RatVector mu(spec.rank());
  for (std::size_t i = 0; i < spec.ambient_rank(); ++i) {
    const Rational c = m.z2[i] - m.w2[i];
    if (c == 0) continue;
    for (std::size_t r = 0; r < spec.rank(); ++r) mu[r] += c * spec.basis()(r, i);
  }
  return mu;
}

/// μ̂_ℂ = Σ z_i w_i a_i
inline std::vector<std::complex<double>> moment_complex(const NumericPoint& p, const TorusSpec& spec) {
  if (p.z.size() != spec.ambient_rank() || p.w.size() != spec.ambient_rank())
    throw PreconditionError("point must have N coordinates");
  std::vector<std::complex<double>> mu(spec.rank());
  for (std::size_t i = 0; i < spec.ambient_rank(); ++i)
    for (std::size_t r = 0; r < spec.rank(); ++r) mu[r] += p.z[i] * p.w[i] * spec.basis()(r, i).convert_to<double>();
  return mu;
}

/// α ∈ cone{a_i : z_i ≠ 0} + cone{−a_i : w_i ≠ 0}
inline bool is_semistable(const ExactModuli& m, const RatVector& alpha, const TorusSpec& spec) {
  detail::check_lengths(m, spec);
  const auto g = detail::active_generators(m, spec);
  if (g.empty()) return detail::is_zero(alpha);
  return solve_lp(detail::cone_membership(g, alpha)).feasible();
}

/// α in the relatively open cone Σ ℝ_{>0} g_k. Each generator's coefficient is
/// maximized separately; the average of those solutions is strictly positive
/// iff every maximum is.
inline bool has_closed_orbit(const ExactModuli& m, const RatVector& alpha, const TorusSpec& spec) {
  if (!is_semistable(m, alpha, spec)) return false;
  const auto g = detail::active_generators(m, spec);
  if (g.empty()) return true;
  for (std::size_t k = 0; k < g.size(); ++k) {
    LinearProgram lp = detail::cone_membership(g, alpha);
    lp.objective.assign(g.size(), Rational(0));
    lp.objective[k] = 1;
    const LpSolution s = solve_lp(lp);
    if (s.status == LpStatus::Optimal && s.value <= 0) return false;
  }
  return true;
}

/// A primitive integer X with ⟨g_k, X⟩ ≥ 0 for every active generator and
/// either ⟨α, X⟩ < 0 (not semistable) or ⟨α, X⟩ = 0 with some ⟨g_k, X⟩ > 0
/// (semistable, orbit not closed). None when the orbit is closed.
inline std::optional<IntVector> destabilizing_direction(const ExactModuli& m, const RatVector& alpha,
                                                        const TorusSpec& spec) {
  detail::check_lengths(m, spec);
  const std::size_t d = spec.rank();
  const auto g = detail::active_generators(m, spec);
  auto base = [&] {
    LinearProgram lp(d);
    for (const auto& gk : g) lp.add(to_rational(gk), Relation::GreaterEqual, 0);
    for (std::size_t r = 0; r < d; ++r) {
      RatVector e(d);
      e[r] = 1;
      lp.add(e, Relation::LessEqual, 1);
      lp.add(e, Relation::GreaterEqual, -1);
    }
    return lp;
  };
  if (!is_semistable(m, alpha, spec)) {
    LinearProgram lp = base();
    lp.objective = alpha;
    for (auto& x : lp.objective) x = -x;
    const LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal || s.value <= 0) throw std::logic_error("Farkas certificate not found");
    return primitive_integer(s.x);
  }
  if (has_closed_orbit(m, alpha, spec)) return std::nullopt;
  LinearProgram lp = base();
  lp.add(alpha, Relation::LessEqual, 0);
  lp.objective.assign(d, Rational(0));
  for (const auto& gk : g)
    for (std::size_t r = 0; r < d; ++r) lp.objective[r] += gk[r];
  const LpSolution s = solve_lp(lp);
  if (s.status != LpStatus::Optimal || s.value <= 0) throw std::logic_error("non-closed certificate not found");
  return primitive_integer(s.x);
}

/// True iff X certifies non-semistability: ⟨α, X⟩ < 0 and ⟨g_k, X⟩ ≥ 0.
inline bool is_strict_certificate(const IntVector& X, const ExactModuli& m, const RatVector& alpha,
                                  const TorusSpec& spec) {
  if (dot(alpha, X) >= 0) return false;
  for (const auto& gk : detail::active_generators(m, spec))
    if (dot(gk, X) < 0) return false;
  return true;
}

enum class FlowStatus { Converged, Diverged, MaxIter };

inline const char* to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "converged";
    case FlowStatus::Diverged: return "diverged";
    case FlowStatus::MaxIter: return "max_iter";
  }
  return "unknown";
}

struct FlowOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100000;
};

struct FlowResult {
  FlowStatus status = FlowStatus::MaxIter;
  std::vector<double> minimizer;
  double residual = 0;  // ‖α̂ − μ̂_1‖ at the last iterate
  std::size_t iterations = 0;
  std::optional<IntVector> certificate;
  std::vector<std::string> warnings;
};

namespace detail {

struct KempfNessObjective {
  Eigen::MatrixXd a;  // d×N weights
  Eigen::VectorXd alpha, z2, w2;

  // c·e^x with 0·e^x = 0 even where e^x overflows.
  static double term(double c, double x) { return c == 0 ? 0.0 : c * std::exp(x); }

  [[nodiscard]] double value(const Eigen::VectorXd& X) const {
    const Eigen::VectorXd s = a.transpose() * X;
    double f = alpha.dot(X);
    for (Eigen::Index i = 0; i < s.size(); ++i) f += term(z2[i], -s[i]) + term(w2[i], s[i]);
    return f;
  }

  void derivatives(const Eigen::VectorXd& X, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const Eigen::VectorXd s = a.transpose() * X;
    grad = alpha;
    hess = Eigen::MatrixXd::Zero(alpha.size(), alpha.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double ez = term(z2[i], -s[i]), ew = term(w2[i], s[i]);
      grad += (ew - ez) * a.col(i);
      hess += (ez + ew) * a.col(i) * a.col(i).transpose();
    }
  }
};

}  // namespace detail

/// Damped Newton on the span V of the active weights, plain descent on V^⊥
/// where F is linear, Armijo backtracking (c = 1e−4, factor 1/2) from X = 0.
/// Converged iff ‖∇F‖ ≤ tol and the Newton step has also become small. Along
/// an escaping ray such as e^{−x} the gradient vanishes but each Newton step
/// still moves X by O(1); drifting further than 1 with ‖∇F‖ ≤ tol is
/// reported as Diverged.
inline FlowResult kempf_ness_descent(const ExactModuli& m, const RatVector& alpha, const TorusSpec& spec,
                                     const FlowOptions& opt = {}) {
  detail::check_lengths(m, spec);
  const std::size_t d = spec.rank(), N = spec.ambient_rank();
  detail::KempfNessObjective F;
  F.a.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(N));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < N; ++i) F.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = spec.basis()(r, i).convert_to<double>();
  F.alpha.resize(static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) F.alpha[static_cast<Eigen::Index>(r)] = alpha[r].convert_to<double>();
  F.z2.resize(static_cast<Eigen::Index>(N));
  F.w2.resize(static_cast<Eigen::Index>(N));
  Eigen::MatrixXd active(static_cast<Eigen::Index>(d), 0);
  for (std::size_t i = 0; i < N; ++i) {
    F.z2[static_cast<Eigen::Index>(i)] = m.z2[i].convert_to<double>();
    F.w2[static_cast<Eigen::Index>(i)] = m.w2[i].convert_to<double>();
    if (m.z2[i] > 0 || m.w2[i] > 0) {
      active.conservativeResize(Eigen::NoChange, active.cols() + 1);
      active.col(active.cols() - 1) = F.a.col(static_cast<Eigen::Index>(i));
    }
  }
  // Orthonormal basis Q of V.
  Eigen::MatrixXd Q(static_cast<Eigen::Index>(d), 0);
  if (active.cols() > 0 && d > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(active, Eigen::ComputeFullU);
    svd.setThreshold(1e-10);
    Q = svd.matrixU().leftCols(svd.rank());
  }

  FlowResult out;
  Eigen::VectorXd X = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double best_grad = INFINITY;
  std::size_t since_best = 0;
  std::optional<Eigen::VectorXd> endgame;  // first iterate with ‖∇F‖ ≤ tol
  auto finish = [&](FlowStatus st) {
    out.status = st;
    out.minimizer.assign(X.data(), X.data() + X.size());
    if (st != FlowStatus::Converged) out.certificate = destabilizing_direction(m, alpha, spec);
    return out;
  };

  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    out.iterations = it;
    F.derivatives(X, grad, hess);
    const double gnorm = grad.norm();
    out.residual = gnorm;
    if (!std::isfinite(gnorm)) return finish(FlowStatus::Diverged);

    Eigen::VectorXd step = -(grad - Q * (Q.transpose() * grad));
    Eigen::VectorXd newton = Eigen::VectorXd::Zero(X.size());
    bool newton_ok = true;
    if (Q.cols() > 0) {
      const Eigen::MatrixXd hv = Q.transpose() * hess * Q;
      const Eigen::VectorXd gv = Q.transpose() * grad;
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(hv);
      Eigen::VectorXd pv = ldlt.solve(-gv);
      newton_ok = ldlt.info() == Eigen::Success && ldlt.isPositive() && pv.allFinite() &&
                  (gv.norm() == 0 || pv.dot(gv) < 0) && hv.norm() > 1e-200;
      if (!newton_ok) pv = -gv;
      newton = Q * pv;
      step += newton;
    }
    if (gnorm <= opt.tol) {
      if (newton_ok && newton.norm() <= std::sqrt(opt.tol)) return finish(FlowStatus::Converged);
      if (!endgame) endgame = X;
      if ((X - *endgame).norm() > 1) return finish(FlowStatus::Diverged);
    }

    if (gnorm < best_grad * (1 - 1e-12)) {
      best_grad = gnorm;
      since_best = 0;
    } else if (++since_best >= 100 && X.norm() > 1e3) {
      return finish(FlowStatus::Diverged);
    }
    if (X.norm() > 1e6) return finish(FlowStatus::Diverged);

    const double f0 = F.value(X), slope = grad.dot(step);
    if (!(slope < 0)) return finish(FlowStatus::Diverged);
    // Once the predicted decrease is below the rounding of F, compare
    // gradient norms instead of values.
    const bool flat = -slope <= 1e-10 * (1 + std::abs(f0));
    double t = 1;
    bool accepted = false;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      bool ok;
      if (flat) {
        Eigen::VectorXd g1;
        Eigen::MatrixXd h1;
        F.derivatives(X + t * step, g1, h1);
        ok = g1.norm() < gnorm;
      } else {
        const double f1 = F.value(X + t * step);
        ok = std::isfinite(f1) && f1 <= f0 + 1e-4 * t * slope;
      }
      if (ok) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Near a minimum F is flat to rounding; take the full step if it
      // still shrinks the gradient.
      Eigen::VectorXd g1;
      Eigen::MatrixXd h1;
      F.derivatives(X + step, g1, h1);
      if (!(g1.norm() < gnorm)) return finish(FlowStatus::Diverged);
      t = 1;
    }
    const Eigen::VectorXd next = X + t * step;
    if (next == X) return finish(FlowStatus::Diverged);
    X = next;
  }
  out.iterations = opt.max_iter;
  return finish(FlowStatus::MaxIter);
}

/// Descent from a complex point; warns when μ̂_ℂ(p) is not the target β̂.
inline FlowResult kempf_ness_descent(const NumericPoint& p, const Parameter& param, const TorusSpec& spec,
                                     const FlowOptions& opt = {}) {
  const auto mu = moment_complex(p, spec);
  double err = 0;
  for (std::size_t r = 0; r < mu.size(); ++r) {
    const std::complex<double> target(param.beta_re[r].convert_to<double>(), param.beta_im[r].convert_to<double>());
    err = std::max(err, std::abs(mu[r] - target));
  }
  FlowResult out = kempf_ness_descent(p.moduli(), param.alpha, spec, opt);
  if (err > opt.tol) out.warnings.push_back("complex moment map of the point differs from beta");
  return out;
}

}  // namespace hypertoric
