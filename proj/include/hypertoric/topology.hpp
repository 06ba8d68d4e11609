#pragma once

// Betti numbers from the bounded complex, the two presentations of the
// cohomology ring, their reduction to k-coordinates, Hilbert functions and the
// component ideals of the core.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/exact_lp.hpp"
#include "hypertoric/torus_model.hpp"

namespace hypertoric {

/// Coefficients b_0, b_2, b_4, ... of powers of t².
struct PoincarePolynomial {
  std::vector<Integer> coefficients;

  [[nodiscard]] Integer total() const {
    Integer s = 0;
    for (const auto& b : coefficients) s += b;
    return s;
  }

  /// "1 + 2t^2 + t^4"
  [[nodiscard]] std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      const Integer& b = coefficients[k];
      if (b == 0) continue;
      std::string term;
      if (k == 0) {
        term = to_string(b);
      } else {
        if (b != 1) term = to_string(b);
        term += k == 1 ? "t^2" : "t^" + std::to_string(2 * k);
      }
      out += out.empty() ? term : " + " + term;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const PoincarePolynomial& a, const PoincarePolynomial& b) {
    return a.coefficients == b.coefficients;
  }
};

namespace detail {

inline Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<unsigned long>(n - i) / static_cast<unsigned long>(i + 1);
  return r;
}

}  // namespace detail

/// Σ_k d_k (t² − 1)^k.
inline PoincarePolynomial poincare_from_face_counts(const std::vector<std::size_t>& d) {
  PoincarePolynomial p;
  p.coefficients.assign(d.size(), Integer(0));
  for (std::size_t k = 0; k < d.size(); ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      Integer term = detail::binomial(k, j) * static_cast<unsigned long>(d[k]);
      p.coefficients[j] += (k - j) % 2 ? Integer(-term) : term;
    }
  while (!p.coefficients.empty() && p.coefficients.back() == 0) p.coefficients.pop_back();
  for (const auto& b : p.coefficients)
    if (b < 0) throw std::logic_error("negative Betti number from face counts");
  return p;
}

/// Everything derived from the arrangement of the reduced spec (zero weights
/// dropped) at a regular (α, 0).
struct CoreData {
  TorusSpec reduced;
  Arrangement arrangement;
  std::vector<Face> faces;
  PolyhedralComplex complex;
};

inline void require_regular_real(const TorusSpec& spec, const RatVector& alpha) {
  Parameter p = Parameter::zero(spec.rank());
  p.alpha = alpha;
  if (!is_regular_value(spec, p).regular) throw PreconditionError("not a regular value");
}

inline CoreData analyze_core(const TorusSpec& spec, const RatVector& alpha, const EnumerationOptions& opt = {}) {
  if (alpha.size() != spec.rank()) throw PreconditionError("alpha must have length d");
  require_regular_real(spec, alpha);
  CoreData c;
  c.reduced = spec.without_zero_weights();
  c.arrangement = build_arrangement(c.reduced, alpha);
  c.faces = enumerate_faces(c.arrangement, opt);
  c.complex = bounded_complex(c.faces, c.arrangement.dimension);
  return c;
}

inline PoincarePolynomial poincare_polynomial(const TorusSpec& spec, const RatVector& alpha,
                                              const EnumerationOptions& opt = {}) {
  return poincare_from_face_counts(analyze_core(spec, alpha, opt).complex.face_counts);
}

enum class PresentationMode { Circuits, EmptyIntersections };
enum class CoefficientRing { Integral, Rational };

inline const char* to_string(CoefficientRing c) { return c == CoefficientRing::Integral ? "integral" : "rational"; }

/// ℤ[u_1..u_N] modulo linear relations Σ m_i u_i and monomials ∏_{i∈J} u_i.
struct RingPresentation {
  std::size_t nvars = 0;
  std::vector<IntVector> linear_relations;
  std::vector<std::vector<std::size_t>> monomials;
  CoefficientRing coefficients = CoefficientRing::Integral;
};

namespace detail {

inline std::string linear_form_string(const IntVector& c, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const Integer a = abs(c[i]);
    if (out.empty())
      out += c[i] < 0 ? "-" : "";
    else
      out += c[i] < 0 ? " - " : " + ";
    if (a != 1) out += to_string(a);
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

inline std::vector<std::string> variable_names(const std::string& stem, std::size_t n, bool bare_single) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(bare_single && n == 1 ? stem : stem + std::to_string(i + 1));
  return names;
}

}  // namespace detail

inline std::string relation_string(const IntVector& m) {
  return detail::linear_form_string(m, detail::variable_names("u", m.size(), false));
}

inline std::string monomial_string(const std::vector<std::size_t>& J) {
  std::string out;
  for (auto i : J) out += "u" + std::to_string(i + 1);
  return out.empty() ? "1" : out;
}

namespace detail {

// Inclusion-minimal index sets J (by increasing size, then lexicographic)
// for which `empty(J)` holds, among sets of size at most max_size.
template <typename Pred>
std::vector<std::vector<std::size_t>> minimal_sets(std::size_t N, std::size_t max_size, Pred&& empty) {
  std::vector<std::vector<std::size_t>> found;
  for (std::size_t k = 1; k <= std::min(N, max_size); ++k)
    for_each_subset(N, k, [&](const std::vector<std::size_t>& J) {
      for (const auto& F : found)
        if (std::includes(J.begin(), J.end(), F.begin(), F.end())) return true;
      if (empty(J)) found.push_back(J);
      return true;
    });
  return found;
}

inline bool flats_meet(const Arrangement& arr, const std::vector<std::size_t>& J) {
  IntMatrix M(J.size(), arr.dimension);
  RatVector b(J.size());
  for (std::size_t r = 0; r < J.size(); ++r) {
    const Hyperplane& H = arr.hyperplanes[J[r]];
    for (std::size_t k = 0; k < arr.dimension; ++k) M(r, k) = H.normal[k];
    b[r] = -H.offset;
  }
  return solve_rational(M, b).has_value();
}

}  // namespace detail

inline RingPresentation base_presentation(const TorusSpec& spec) {
  RingPresentation p;
  p.nvars = spec.ambient_rank();
  p.linear_relations = integer_kernel_basis(spec.basis());
  p.coefficients = is_smooth(spec).smooth ? CoefficientRing::Integral : CoefficientRing::Rational;
  return p;
}

/// Circuits mode uses the wall circuits J_s. EmptyIntersections mode uses the
/// minimal J with ⋂_{i∈J} F_i = ∅ and needs α.
inline RingPresentation cohomology_presentation(const TorusSpec& spec, PresentationMode mode,
                                                const std::optional<RatVector>& alpha = std::nullopt) {
  RingPresentation p = base_presentation(spec);
  if (mode == PresentationMode::Circuits) {
    for (const auto& w : enumerate_walls(spec)) p.monomials.push_back(w.circuit);
    std::sort(p.monomials.begin(), p.monomials.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return p;
  }
  if (!alpha) throw PreconditionError("empty-intersection presentation requires alpha");
  require_regular_real(spec, *alpha);
  const Arrangement arr = build_arrangement(spec, *alpha);
  // An inconsistent affine system in n unknowns has an inconsistent
  // subsystem of at most n + 1 equations.
  p.monomials = detail::minimal_sets(spec.ambient_rank(), arr.dimension + 1,
                                     [&](const std::vector<std::size_t>& J) { return !detail::flats_meet(arr, J); });
  return p;
}

/// A polynomial in v_1..v_m with integer coefficients, keyed by exponent vector.
using Polynomial = std::map<std::vector<unsigned>, Integer>;

/// The presentation after substituting u_i ↦ a_i = Σ_r B(r,i) v_r, which
/// solves every linear relation. Generators stay factored as products of
/// linear forms.
struct ReducedPresentation {
  std::size_t nvars = 0;
  std::vector<std::vector<IntVector>> generators;

  [[nodiscard]] std::vector<std::string> variable_names() const { return detail::variable_names("v", nvars, true); }

  [[nodiscard]] std::string generator_string(std::size_t g) const {
    // Equal factors are collected into powers, in order of first appearance.
    std::vector<std::pair<IntVector, unsigned>> groups;
    for (const auto& f : generators[g]) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& e) { return e.first == f; });
      if (it == groups.end())
        groups.emplace_back(f, 1);
      else
        ++it->second;
    }
    std::string out;
    for (const auto& [f, e] : groups) {
      std::string base = detail::linear_form_string(f, variable_names());
      const std::size_t terms = static_cast<std::size_t>(
          std::count_if(f.begin(), f.end(), [](const Integer& c) { return c != 0; }));
      const bool bare = terms == 1 && (base[0] != '-') && std::all_of(f.begin(), f.end(), [](const Integer& c) {
                          return c == 0 || c == 1;
                        });
      if (!bare) base = "(" + base + ")";
      out += base;
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
  }

  [[nodiscard]] std::string str() const {
    std::string ring = "Z[";
    const auto names = variable_names();
    for (std::size_t i = 0; i < names.size(); ++i) ring += (i ? "," : "") + names[i];
    ring += "]";
    if (nvars == 0) ring = "Z";
    std::string ideal;
    for (std::size_t g = 0; g < generators.size(); ++g) ideal += (g ? ", " : "") + generator_string(g);
    return generators.empty() ? ring : ring + "/(" + ideal + ")";
  }
};

inline ReducedPresentation reduce_presentation(const RingPresentation& pres, const TorusSpec& spec) {
  ReducedPresentation r;
  r.nvars = spec.rank();
  for (const auto& J : pres.monomials) {
    std::vector<IntVector> factors;
    for (auto i : J) factors.push_back(spec.weight(i));
    r.generators.push_back(std::move(factors));
  }
  return r;
}

namespace detail {

inline Polynomial expand(const std::vector<IntVector>& factors, std::size_t nvars) {
  Polynomial p{{std::vector<unsigned>(nvars, 0), Integer(1)}};
  for (const auto& f : factors) {
    Polynomial next;
    for (const auto& [mono, c] : p)
      for (std::size_t v = 0; v < nvars; ++v) {
        if (f[v] == 0) continue;
        auto m = mono;
        ++m[v];
        next[m] += c * f[v];
      }
    for (auto it = next.begin(); it != next.end();)
      it = it->second == 0 ? next.erase(it) : std::next(it);
    p = std::move(next);
  }
  return p;
}

inline void monomials_of_degree(std::size_t nvars, unsigned degree, std::vector<unsigned>& cur, std::size_t v,
                                std::vector<std::vector<unsigned>>& out) {
  if (v + 1 == nvars) {
    cur[v] = degree;
    out.push_back(cur);
    return;
  }
  for (unsigned e = degree + 1; e-- > 0;) {
    cur[v] = e;
    monomials_of_degree(nvars, degree - e, cur, v + 1, out);
  }
}

// Incremental row echelon form over ℚ; rows are kept sorted by pivot column.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width) {}

  bool insert(RatVector row) {
    for (const auto& [pivot, r] : rows_) {
      if (row[pivot] == 0) continue;
      const Rational f = row[pivot];
      for (std::size_t j = pivot; j < width_; ++j)
        if (r[j] != 0) row[j] -= f * r[j];
    }
    std::size_t p = 0;
    while (p < width_ && row[p] == 0) ++p;
    if (p == width_) return false;
    const Rational inv = 1 / row[p];
    for (std::size_t j = p; j < width_; ++j) row[j] *= inv;
    rows_.emplace(p, std::move(row));
    return true;
  }

  [[nodiscard]] std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t width_;
  std::map<std::size_t, RatVector> rows_;
};

}  // namespace detail

/// dim_ℚ of the degree-k part of ℚ[v]/(generators) for k = 0..through_degree.
inline std::vector<std::size_t> hilbert_function(const ReducedPresentation& pres, std::size_t through_degree) {
  std::vector<std::size_t> out;
  const std::size_t m = pres.nvars;
  std::vector<Polynomial> gens;
  std::vector<unsigned> gen_degree;
  for (const auto& g : pres.generators) {
    gens.push_back(detail::expand(g, m));
    gen_degree.push_back(static_cast<unsigned>(g.size()));
  }
  for (std::size_t k = 0; k <= through_degree; ++k) {
    if (m == 0) {
      bool killed = false;
      for (const auto& g : gens) killed = killed || (!g.empty() && k == 0);
      out.push_back(k == 0 && !killed ? 1 : 0);
      continue;
    }
    std::vector<std::vector<unsigned>> basis;
    std::vector<unsigned> cur(m);
    detail::monomials_of_degree(m, static_cast<unsigned>(k), cur, 0, basis);
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    detail::EchelonBasis ech(basis.size());
    for (std::size_t g = 0; g < gens.size() && ech.rank() < basis.size(); ++g) {
      if (gen_degree[g] > k || gens[g].empty()) continue;
      std::vector<std::vector<unsigned>> shifts;
      std::vector<unsigned> c2(m);
      detail::monomials_of_degree(m, static_cast<unsigned>(k - gen_degree[g]), c2, 0, shifts);
      for (const auto& s : shifts) {
        RatVector row(basis.size());
        for (const auto& [mono, c] : gens[g]) {
          auto prod = mono;
          for (std::size_t v = 0; v < m; ++v) prod[v] += s[v];
          row[index.at(prod)] += Rational(c);
        }
        ech.insert(std::move(row));
        if (ech.rank() == basis.size()) break;
      }
    }
    out.push_back(basis.size() - ech.rank());
  }
  return out;
}

/// The Hilbert function with trailing zeros removed, as Betti-style integers.
inline std::vector<Integer> trimmed(const std::vector<std::size_t>& h) {
  std::vector<Integer> out(h.begin(), h.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

/// Presentation of H*(M_ε): minimal J with (⋂_{i∈J} F_i) ∩ Δ_ε = ∅.
inline RingPresentation component_ideal(const TorusSpec& spec, const RatVector& alpha, const SignVector& epsilon,
                                        const EnumerationOptions& opt = {}) {
  if (!spec.zero_weights().empty()) throw PreconditionError("split trivial H factors first");
  if (epsilon.size() != spec.ambient_rank()) throw PreconditionError("sign vector has wrong length");
  const CoreData core = analyze_core(spec, alpha, opt);
  const auto chambers = bounded_chambers(core.faces, core.arrangement.dimension);
  if (std::none_of(chambers.begin(), chambers.end(), [&](const BoundedChamber& c) { return c.sign == epsilon; }))
    throw PreconditionError("chamber is not bounded");

  RingPresentation p = base_presentation(spec);
  const Arrangement& arr = core.arrangement;
  const std::size_t n = arr.dimension;
  p.monomials = detail::minimal_sets(spec.ambient_rank(), spec.ambient_rank(), [&](const std::vector<std::size_t>& J) {
    LinearProgram lp(n);
    for (std::size_t j = 0; j < arr.size(); ++j) {
      const Hyperplane& H = arr.hyperplanes[j];
      RatVector row(H.normal.begin(), H.normal.end());
      const bool on = std::binary_search(J.begin(), J.end(), j);
      if (on) {
        lp.add(std::move(row), Relation::Equal, -H.offset);
      } else {
        for (auto& x : row) x *= epsilon[j];
        lp.add(std::move(row), Relation::GreaterEqual, -H.offset * epsilon[j]);
      }
    }
    return !solve_lp(lp).feasible();
  });
  return p;
}

struct KirwanCheck {
  bool surjective = false;
  Integer betti_sum = 0;
  std::size_t vertex_count = 0;    // d_0
  std::size_t top_degree = 0;      // of P in powers of t²
  std::size_t max_face_dim = 0;
  std::vector<Integer> ring_hilbert;  // of the reduced circuit presentation
};

/// Instance check that u_1..u_N generate: the circuit ring's Hilbert function
/// reproduces the Betti numbers, Σ b = d_0 and the top degree is the largest
/// face dimension.
inline KirwanCheck kirwan_surjectivity_check(const TorusSpec& spec, const RatVector& alpha,
                                             const EnumerationOptions& opt = {}) {
  const CoreData core = analyze_core(spec, alpha, opt);
  const PoincarePolynomial P = poincare_from_face_counts(core.complex.face_counts);
  KirwanCheck k;
  k.betti_sum = P.total();
  k.vertex_count = core.complex.face_counts.empty() ? 0 : core.complex.face_counts[0];
  k.top_degree = P.coefficients.empty() ? 0 : P.coefficients.size() - 1;
  k.max_face_dim = core.complex.top_dimension();
  const auto reduced = reduce_presentation(cohomology_presentation(spec, PresentationMode::Circuits), spec);
  k.ring_hilbert = trimmed(hilbert_function(reduced, spec.quotient_rank() + 1));
  k.surjective = k.betti_sum == k.vertex_count && k.top_degree == k.max_face_dim && k.ring_hilbert == P.coefficients;
  return k;
}

}  // namespace hypertoric
