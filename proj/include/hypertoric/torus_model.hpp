#pragma once

// The subtorus K ⊂ T^N: basis data, Gale dual, weights, walls, regularity and
// smoothness.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/numeric.hpp"

namespace hypertoric {

namespace detail {

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order;
// stops early when f returns false.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Validated torus data. B is d×N with rows a ℤ-basis of k_ℤ; A is its Gale
/// dual (n×N); the weight a_i is column i of B.
class TorusSpec {
 public:
  TorusSpec() = default;

  /// Throws PreconditionError unless B is full row rank and saturated.
  /// A 0×N basis is accepted and describes the trivial torus.
  static TorusSpec from_basis(const IntMatrix& B) {
    if (B.rows() > 0 && hypertoric::rank(B) != B.rows()) throw PreconditionError("invalid torus: basis is rank deficient");
    if (B.rows() > 0 && !is_saturated(B)) throw PreconditionError("unsaturated lattice");
    TorusSpec s;
    s.basis_ = B;
    s.gale_ = B.rows() == 0 ? IntMatrix::identity(B.cols()) : gale_dual(B);
    return s;
  }

  [[nodiscard]] std::size_t ambient_rank() const { return basis_.cols(); }  // N
  [[nodiscard]] std::size_t rank() const { return basis_.rows(); }          // d
  [[nodiscard]] std::size_t quotient_rank() const { return gale_.rows(); }  // n

  [[nodiscard]] const IntMatrix& basis() const { return basis_; }
  [[nodiscard]] const IntMatrix& gale() const { return gale_; }

  [[nodiscard]] IntVector weight(std::size_t i) const { return basis_.column(i); }
  [[nodiscard]] IntVector gale_column(std::size_t i) const { return gale_.column(i); }

  /// Indices with a_i = 0: each splits off a flat ℍ factor.
  [[nodiscard]] std::vector<std::size_t> zero_weights() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_rank(); ++i) {
      bool zero = true;
      for (std::size_t r = 0; r < rank() && zero; ++r) zero = basis_(r, i) == 0;
      if (zero) out.push_back(i);
    }
    return out;
  }

  /// Indices with π(X_i) = 0, whose hyperplane F_i is empty.
  [[nodiscard]] std::vector<std::size_t> empty_hyperplanes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ambient_rank(); ++i) {
      bool zero = true;
      for (std::size_t r = 0; r < quotient_rank() && zero; ++r) zero = gale_(r, i) == 0;
      if (zero) out.push_back(i);
    }
    return out;
  }

  /// Columns with nonzero weight, in increasing order.
  [[nodiscard]] std::vector<std::size_t> nonzero_weights() const {
    std::vector<std::size_t> out;
    const auto zeros = zero_weights();
    for (std::size_t i = 0; i < ambient_rank(); ++i)
      if (!std::binary_search(zeros.begin(), zeros.end(), i)) out.push_back(i);
    return out;
  }

  /// The spec with the zero-weight columns removed. The flat factors carry no
  /// topology, so Betti numbers and the core are computed on this spec.
  [[nodiscard]] TorusSpec without_zero_weights() const {
    const auto keep = nonzero_weights();
    if (keep.size() == ambient_rank()) return *this;
    return from_basis(basis_.select_columns(keep));
  }

 private:
  IntMatrix basis_;
  IntMatrix gale_;
};

/// α ∈ k* and β = β_re + √−1 β_im ∈ k*_ℂ in reduced units, as coordinates in
/// the basis dual to the rows of B.
struct Parameter {
  RatVector alpha;
  RatVector beta_re;
  RatVector beta_im;

  static Parameter zero(std::size_t d) { return {RatVector(d), RatVector(d), RatVector(d)}; }

  [[nodiscard]] bool beta_is_zero() const {
    auto zero = [](const RatVector& v) { return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }); };
    return zero(beta_re) && zero(beta_im);
  }
};

struct SpecDiagnostic {
  enum class Kind { InvalidTorus, UnsaturatedLattice, SplitFactor, EmptyHyperplane };
  Kind kind;
  std::string message;
  std::vector<std::size_t> indices;
};

inline const char* to_string(SpecDiagnostic::Kind k) {
  switch (k) {
    case SpecDiagnostic::Kind::InvalidTorus: return "invalid_torus";
    case SpecDiagnostic::Kind::UnsaturatedLattice: return "unsaturated_lattice";
    case SpecDiagnostic::Kind::SplitFactor: return "split_factor";
    case SpecDiagnostic::Kind::EmptyHyperplane: return "empty_hyperplane";
  }
  return "unknown";
}

struct SpecValidation {
  std::optional<TorusSpec> spec;
  std::vector<SpecDiagnostic> diagnostics;
  std::optional<IntMatrix> saturation;  // offered when the lattice is not saturated

  [[nodiscard]] bool valid() const { return spec.has_value(); }
};

inline SpecValidation validate_spec(const IntMatrix& B) {
  SpecValidation out;
  if (B.rows() > 0 && (B.cols() == 0 || rank(B) != B.rows())) {
    out.diagnostics.push_back({SpecDiagnostic::Kind::InvalidTorus, "invalid torus", {}});
    return out;
  }
  if (B.rows() > 0 && !is_saturated(B)) {
    out.diagnostics.push_back({SpecDiagnostic::Kind::UnsaturatedLattice, "unsaturated lattice", {}});
    out.saturation = saturate_rows(B);
    return out;
  }
  TorusSpec spec = TorusSpec::from_basis(B);
  if (auto z = spec.zero_weights(); !z.empty())
    out.diagnostics.push_back({SpecDiagnostic::Kind::SplitFactor, "zero weight: trivial H factor splits off", z});
  if (auto e = spec.empty_hyperplanes(); !e.empty())
    out.diagnostics.push_back({SpecDiagnostic::Kind::EmptyHyperplane, "pi(X_i) = 0: hyperplane F_i is empty", e});
  out.spec = std::move(spec);
  return out;
}

/// A hyperplane W_s of k* spanned by weights, with primitive normal Y_s and
/// circuit J_s = {i : ⟨a_i, Y_s⟩ ≠ 0}.
struct Wall {
  std::size_t id = 0;
  std::vector<std::size_t> span_set;  // nonzero weights lying on the wall
  IntVector normal;                   // Y_s in k-coordinates
  std::vector<std::size_t> circuit;   // J_s
};

inline std::vector<Wall> enumerate_walls(const TorusSpec& spec) {
  const std::size_t d = spec.rank();
  std::vector<Wall> walls;
  if (d == 0) return walls;
  const auto nz = spec.nonzero_weights();

  std::set<IntVector> normals;
  if (d == 1) {
    normals.insert(IntVector{1});
  } else {
    detail::for_each_subset(nz.size(), d - 1, [&](const std::vector<std::size_t>& pick) {
      IntMatrix rows(d - 1, d);
      for (std::size_t r = 0; r < d - 1; ++r)
        for (std::size_t c = 0; c < d; ++c) rows(r, c) = spec.basis()(c, nz[pick[r]]);
      const IntMatrix ker = integer_kernel_matrix(rows);
      if (ker.rows() != 1) return true;
      IntVector y = ker.row(0);
      for (const auto& v : y) {
        if (v == 0) continue;
        if (v < 0)
          for (auto& w : y) w = -w;
        break;
      }
      normals.insert(std::move(y));
      return true;
    });
  }

  for (const auto& y : normals) {
    Wall w;
    w.normal = y;
    for (std::size_t i : nz) {
      if (dot(spec.weight(i), y) == 0)
        w.span_set.push_back(i);
      else
        w.circuit.push_back(i);
    }
    walls.push_back(std::move(w));
  }
  std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
    if (a.circuit.size() != b.circuit.size()) return a.circuit.size() < b.circuit.size();
    return a.circuit < b.circuit;
  });
  for (std::size_t s = 0; s < walls.size(); ++s) walls[s].id = s;
  return walls;
}

struct RegularityResult {
  bool regular = true;
  std::vector<std::size_t> violating;  // wall ids
};

inline RegularityResult is_regular_value(const std::vector<Wall>& walls, const Parameter& param) {
  RegularityResult out;
  for (const auto& w : walls) {
    if (dot(param.alpha, w.normal) == 0 && dot(param.beta_re, w.normal) == 0 && dot(param.beta_im, w.normal) == 0) {
      out.regular = false;
      out.violating.push_back(w.id);
    }
  }
  return out;
}

inline RegularityResult is_regular_value(const TorusSpec& spec, const Parameter& param) {
  return is_regular_value(enumerate_walls(spec), param);
}

struct SmoothnessResult {
  bool smooth = true;
  std::optional<std::vector<std::size_t>> witness;  // column set with |det| > 1
};

/// Smooth iff every nonsingular d×d minor of B is ±1.
inline SmoothnessResult is_smooth(const TorusSpec& spec) {
  SmoothnessResult out;
  const std::size_t d = spec.rank();
  detail::for_each_subset(spec.ambient_rank(), d, [&](const std::vector<std::size_t>& cols) {
    const Integer det = determinant(spec.basis().select_columns(cols));
    if (det != 0 && abs(det) != 1) {
      out.smooth = false;
      out.witness = cols;
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace hypertoric
