#pragma once

// The arrangement {F_i} in (t^n)*, its faces as sign vectors, the bounded
// complex C(X(α,0)) and the bounded chambers Δ_ε that make up the core.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/exact_lp.hpp"
#include "hypertoric/parallel.hpp"
#include "hypertoric/torus_model.hpp"

namespace hypertoric {

/// F_i = {p : ⟨normal, p⟩ + offset = 0}
struct Hyperplane {
  std::size_t index = 0;
  IntVector normal;
  Rational offset;

  [[nodiscard]] bool degenerate() const {
    return std::all_of(normal.begin(), normal.end(), [](const Integer& v) { return v == 0; });
  }
  [[nodiscard]] bool empty() const { return degenerate() && offset != 0; }
  [[nodiscard]] Rational evaluate(const RatVector& p) const { return dot(normal, p) + offset; }
};

struct Arrangement {
  std::size_t dimension = 0;  // n
  RatVector h;                // B·h = α
  std::vector<Hyperplane> hyperplanes;

  [[nodiscard]] std::size_t size() const { return hyperplanes.size(); }
};

inline Arrangement build_arrangement(const TorusSpec& spec, const RatVector& alpha) {
  if (alpha.size() != spec.rank()) throw std::invalid_argument("alpha has wrong length");
  Arrangement arr;
  arr.dimension = spec.quotient_rank();
  if (spec.rank() == 0) {
    arr.h.assign(spec.ambient_rank(), Rational(0));
  } else {
    auto h = solve_rational(spec.basis(), alpha);
    if (!h) throw std::logic_error("full-rank system reported inconsistent");
    arr.h = std::move(*h);
  }
  for (std::size_t i = 0; i < spec.ambient_rank(); ++i)
    arr.hyperplanes.push_back({i, spec.gale_column(i), arr.h[i]});
  return arr;
}

/// Entries in {−1, 0, +1}, one per hyperplane.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<int> entries) : e_(std::move(entries)) {}

  [[nodiscard]] std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  [[nodiscard]] const std::vector<int>& entries() const { return e_; }
  void push_back(int s) { e_.push_back(s); }

  [[nodiscard]] bool full_support() const {
    return std::none_of(e_.begin(), e_.end(), [](int s) { return s == 0; });
  }
  [[nodiscard]] std::vector<std::size_t> zeros() const {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] == 0) z.push_back(i);
    return z;
  }

  /// σ ≤ τ: σ lies in the closure of τ.
  [[nodiscard]] bool face_of(const SignVector& tau) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != 0 && e_[i] != tau.e_[i]) return false;
    return true;
  }

  /// "(+,0,−)" with ASCII minus.
  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ',';
      s += e_[i] > 0 ? '+' : (e_[i] < 0 ? '-' : '0');
    }
    return s + ")";
  }

  static SignVector parse(std::string_view text) {
    const std::string t = detail::normalize_minus(text);
    std::vector<int> e;
    for (char c : t) {
      if (c == '+') e.push_back(1);
      else if (c == '-') e.push_back(-1);
      else if (c == '0') e.push_back(0);
      else if (c == '(' || c == ')' || c == ',' || c == ' ') continue;
      else throw ParseError("malformed sign vector '" + std::string(text) + "'");
    }
    return SignVector(std::move(e));
  }

  friend bool operator==(const SignVector& a, const SignVector& b) { return a.e_ == b.e_; }
  friend bool operator!=(const SignVector& a, const SignVector& b) { return a.e_ != b.e_; }
  friend bool operator<(const SignVector& a, const SignVector& b) { return a.e_ < b.e_; }

 private:
  std::vector<int> e_;
};

struct Face {
  SignVector sign;
  std::size_t dim = 0;
  bool bounded = false;
  RatVector witness;  // relative-interior point
};

struct EnumerationOptions {
  unsigned threads = 1;
};

namespace detail {

// A relative-interior point of {p : sign(F_j(p)) = signs[j] for listed j},
// found by maximizing the common slack t ≤ 1 of the strict inequalities.
inline std::optional<RatVector> interior_point(const Arrangement& arr,
                                               const std::vector<std::pair<std::size_t, int>>& signs) {
  const std::size_t n = arr.dimension;
  LinearProgram lp(n + 1);
  bool strict = false;
  for (const auto& [j, s] : signs) {
    const Hyperplane& H = arr.hyperplanes[j];
    RatVector row(n + 1);
    for (std::size_t k = 0; k < n; ++k) row[k] = Rational(H.normal[k]) * (s == 0 ? 1 : s);
    if (s == 0) {
      if (H.degenerate()) {
        if (H.offset != 0) return std::nullopt;
        continue;
      }
      lp.add(std::move(row), Relation::Equal, -H.offset);
    } else {
      if (H.degenerate()) {
        if (sign(H.offset) != s) return std::nullopt;
        continue;
      }
      row[n] = -1;
      lp.add(std::move(row), Relation::GreaterEqual, -H.offset * s);
      strict = true;
    }
  }
  RatVector tcap(n + 1);
  tcap[n] = 1;
  lp.add(tcap, Relation::LessEqual, 1);
  lp.objective = tcap;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  if (strict && sol.value <= 0) return std::nullopt;
  return RatVector(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
}

inline std::vector<std::pair<std::size_t, int>> constraint_list(const SignVector& s) {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t j = 0; j < s.size(); ++j) out.emplace_back(j, s[j]);
  return out;
}

struct PartialFace {
  SignVector sign;
  RatVector witness;
  std::vector<IntVector> zero_normals;  // linearly independent normals of sign-0 entries
};

// Sign vectors of the rays of the central arrangement {⟨normal_j, x⟩ = 0}:
// each ray is cut out by n − 1 independent normals. The normals span (t^n)*,
// so a face's recession cone is pointed and is nonzero iff some ray conforms
// to the face's sign vector.
inline std::vector<std::vector<int>> central_rays(const Arrangement& arr) {
  const std::size_t n = arr.dimension;
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < arr.size(); ++j)
    if (!arr.hyperplanes[j].degenerate()) live.push_back(j);
  std::set<std::vector<int>> rays;
  if (n == 0) return {};
  for_each_subset(live.size(), n - 1, [&](const std::vector<std::size_t>& sub) {
    IntMatrix M(n - 1, n);
    for (std::size_t r = 0; r < sub.size(); ++r)
      for (std::size_t k = 0; k < n; ++k) M(r, k) = arr.hyperplanes[live[sub[r]]].normal[k];
    const auto kernel = integer_kernel_basis(M);
    if (kernel.size() != 1) return true;
    for (int e : {-1, 1}) {
      std::vector<int> tau(arr.size(), 0);
      for (std::size_t j : live) tau[j] = e * sign(dot(arr.hyperplanes[j].normal, kernel[0]));
      rays.insert(std::move(tau));
    }
    return true;
  });
  return {rays.begin(), rays.end()};
}

inline bool is_bounded(const std::vector<std::vector<int>>& rays, const SignVector& s) {
  for (const auto& tau : rays) {
    bool conforms = true;
    for (std::size_t j = 0; j < tau.size() && conforms; ++j) conforms = tau[j] == 0 || tau[j] == s[j];
    if (conforms) return false;
  }
  return true;
}

inline bool in_span(const std::vector<IntVector>& basis, const IntVector& v) {
  if (basis.empty()) return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  std::vector<IntVector> rows = basis;
  rows.push_back(v);
  return rank(IntMatrix::from_rows(rows, v.size())) == basis.size();
}

// Refines one face by hyperplane i; returns the realizable extensions.
inline std::vector<PartialFace> split_face(const Arrangement& arr, const PartialFace& f, std::size_t i) {
  const Hyperplane& H = arr.hyperplanes[i];
  const int s = sign(H.evaluate(f.witness));
  auto extend = [&](int e, RatVector w, bool add_normal) {
    PartialFace g{f.sign, std::move(w), f.zero_normals};
    g.sign.push_back(e);
    if (add_normal) g.zero_normals.push_back(H.normal);
    return g;
  };
  if (in_span(f.zero_normals, H.normal)) return {extend(s, f.witness, false)};

  std::vector<PartialFace> out;
  auto cons = constraint_list(f.sign);
  if (s == 0) {
    for (int e : {-1, 1}) {
      cons.emplace_back(i, e);
      auto w = interior_point(arr, cons);
      cons.pop_back();
      if (!w) throw std::logic_error("face crossing a hyperplane lost a side");
      out.push_back(extend(e, std::move(*w), false));
    }
    out.push_back(extend(0, f.witness, true));
    return out;
  }
  cons.emplace_back(i, 0);
  auto q = interior_point(arr, cons);
  if (!q) return {extend(s, f.witness, false)};

  // r = q + λ(q − p) sits on the far side of F_i and stays inside the face
  // for λ below every ratio |F_j(q)| / |F_j(q) − F_j(p)| that shrinks a slack.
  const RatVector& p = f.witness;
  Rational lambda = 1;
  for (std::size_t j = 0; j < f.sign.size(); ++j) {
    if (f.sign[j] == 0) continue;
    const Hyperplane& G = arr.hyperplanes[j];
    const Rational vq = G.evaluate(*q), vp = G.evaluate(p);
    const Rational delta = vq - vp;
    if (sign(delta) == -f.sign[j]) {
      const Rational bound = abs(vq) / abs(delta) / 2;
      if (bound < lambda) lambda = bound;
    }
  }
  RatVector r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[k] = (*q)[k] + lambda * ((*q)[k] - p[k]);
  out.push_back(extend(s, p, false));
  out.push_back(extend(0, *q, true));
  out.push_back(extend(-s, std::move(r), false));
  return out;
}

}  // namespace detail

/// Every realizable sign vector of the arrangement, sorted, each with an
/// exact relative-interior witness, its dimension and boundedness.
inline std::vector<Face> enumerate_faces(const Arrangement& arr, const EnumerationOptions& opt = {}) {
  std::vector<detail::PartialFace> current{{SignVector{}, RatVector(arr.dimension), {}}};
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::vector<std::vector<detail::PartialFace>> parts(current.size());
    parallel_for(current.size(), opt.threads, [&](std::size_t k) { parts[k] = detail::split_face(arr, current[k], i); });
    std::vector<detail::PartialFace> next;
    for (auto& part : parts)
      for (auto& f : part) next.push_back(std::move(f));
    current = std::move(next);
  }
  const auto rays = detail::central_rays(arr);
  std::vector<Face> faces(current.size());
  parallel_for(current.size(), opt.threads, [&](std::size_t k) {
    Face& f = faces[k];
    f.sign = std::move(current[k].sign);
    f.dim = arr.dimension - current[k].zero_normals.size();
    f.witness = std::move(current[k].witness);
    f.bounded = f.dim == 0 || detail::is_bounded(rays, f.sign);
  });
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) { return a.sign < b.sign; });
  return faces;
}

/// The bounded faces with counts d_k and covering relations.
struct PolyhedralComplex {
  std::size_t dimension = 0;
  std::vector<Face> faces;                                 // sorted by sign vector
  std::vector<std::size_t> face_counts;                    // d_0 .. d_n
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (σ, τ) with σ < τ, dim τ = dim σ + 1

  [[nodiscard]] bool empty() const { return faces.empty(); }

  [[nodiscard]] std::size_t top_dimension() const {
    std::size_t top = 0;
    for (const auto& f : faces) top = std::max(top, f.dim);
    return top;
  }

  [[nodiscard]] Integer euler_characteristic() const {
    Integer chi = 0;
    for (std::size_t k = 0; k < face_counts.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(face_counts[k]);
    return chi;
  }

  [[nodiscard]] std::optional<std::size_t> find(const SignVector& s) const {
    auto it = std::lower_bound(faces.begin(), faces.end(), s, [](const Face& f, const SignVector& v) { return f.sign < v; });
    if (it == faces.end() || it->sign != s) return std::nullopt;
    return static_cast<std::size_t>(it - faces.begin());
  }
};

inline PolyhedralComplex bounded_complex(const std::vector<Face>& faces, std::size_t dimension) {
  PolyhedralComplex c;
  c.dimension = dimension;
  c.face_counts.assign(dimension + 1, 0);
  for (const auto& f : faces)
    if (f.bounded) {
      c.faces.push_back(f);
      ++c.face_counts[f.dim];
    }
  while (c.face_counts.size() > 1 && c.face_counts.back() == 0) c.face_counts.pop_back();
  if (c.faces.empty()) c.face_counts.clear();
  for (std::size_t a = 0; a < c.faces.size(); ++a)
    for (std::size_t b = 0; b < c.faces.size(); ++b)
      if (c.faces[b].dim == c.faces[a].dim + 1 && c.faces[a].sign.face_of(c.faces[b].sign)) c.covers.emplace_back(a, b);
  return c;
}

/// A bounded full-support chamber Δ_ε with its exact vertices and facets.
/// Inequalities read ε_i(⟨A_i, p⟩ + h_i) ≥ 0 for every i.
struct BoundedChamber {
  SignVector sign;
  std::vector<RatVector> vertices;
  std::vector<std::size_t> facets;  // i such that F_i ∩ Δ_ε is a facet
};

inline std::vector<BoundedChamber> bounded_chambers(const std::vector<Face>& faces, std::size_t dimension) {
  std::vector<BoundedChamber> out;
  for (const auto& f : faces) {
    if (!f.bounded || !f.sign.full_support() || f.dim != dimension) continue;
    BoundedChamber ch{f.sign, {}, {}};
    std::vector<bool> facet(f.sign.size(), false);
    for (const auto& g : faces) {
      if (!g.sign.face_of(f.sign)) continue;
      if (g.dim == 0) ch.vertices.push_back(g.witness);
      if (dimension > 0 && g.dim + 1 == dimension)
        for (auto z : g.sign.zeros()) facet[z] = true;
    }
    for (std::size_t i = 0; i < facet.size(); ++i)
      if (facet[i]) ch.facets.push_back(i);
    out.push_back(std::move(ch));
  }
  return out;
}

/// Components M_ε of the core and, for each pair, the largest common bounded
/// face of Δ_ε and Δ_ε' (an index into `complex.faces`), if any.
struct CoreDecomposition {
  std::vector<BoundedChamber> components;
  struct Intersection {
    std::size_t first = 0, second = 0;
    std::optional<std::size_t> face;
  };
  std::vector<Intersection> intersections;
};

inline CoreDecomposition core_components(const TorusSpec& spec, const PolyhedralComplex& complex,
                                         const std::vector<Face>& faces) {
  if (!spec.zero_weights().empty()) throw PreconditionError("split trivial H factors first");
  CoreDecomposition out;
  out.components = bounded_chambers(faces, complex.dimension);
  for (std::size_t a = 0; a < out.components.size(); ++a)
    for (std::size_t b = a + 1; b < out.components.size(); ++b) {
      CoreDecomposition::Intersection x{a, b, std::nullopt};
      for (std::size_t k = 0; k < complex.faces.size(); ++k) {
        const Face& f = complex.faces[k];
        if (!f.sign.face_of(out.components[a].sign) || !f.sign.face_of(out.components[b].sign)) continue;
        if (!x.face || f.dim > complex.faces[*x.face].dim) x.face = k;
      }
      out.intersections.push_back(x);
    }
  return out;
}

}  // namespace hypertoric
