// hypertoric: command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 parse error, 3 precondition failure, 4 internal.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypertoric/hypertoric.hpp"
#include "hypertoric/spec_file.hpp"
#include "hypertoric/svg.hpp"

using namespace hypertoric;
using Json = nlohmann::ordered_json;

namespace {

Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

Json int_vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

Json rat_vector_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json index_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto i : v) a.push_back(i + 1);
  return a;
}

std::string index_string(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s + "}";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
  return s;
}

RatVector parse_rational_list(const std::string& text) {
  std::string t = detail::normalize_minus(text);
  for (char& c : t)
    if (c == '[' || c == ']' || c == '"' || c == '(' || c == ')') c = ' ';
  RatVector out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

struct Options {
  std::string command;
  std::string spec_path;
  bool json = false;
  std::string svg_path;
  std::string mode = "circuits";
  bool reduced = false;
  std::string to;
  double tol = 1e-8;
  std::size_t max_iter = 100000;
  unsigned threads = 1;
};

// One command's output: structured results plus human-readable lines.
struct Section {
  Json results = Json::object();
  std::vector<std::string> lines;
};

class Runner {
 public:
  Runner(const Options& opt, SpecFile file) : opt_(opt), file_(std::move(file)) {
    enum_opt_.threads = opt.threads;
  }

  // The validated spec; throws PreconditionError for invalid data.
  const TorusSpec& spec() {
    if (!spec_) {
      const auto v = validate_spec(file_.basis);
      if (!v.valid()) throw PreconditionError(v.diagnostics.front().message);
      spec_ = *v.spec;
      walls_ = enumerate_walls(*spec_);
    }
    return *spec_;
  }

  const std::vector<Wall>& walls() {
    spec();
    return walls_;
  }

  Parameter parameter() const { return file_.parameter(); }

  const SpecFile& file() const { return file_; }

  Section validate() {
    Section s;
    const auto v = validate_spec(file_.basis);
    s.results["valid"] = v.valid();
    Json diags = Json::array();
    for (const auto& d : v.diagnostics) {
      diags.push_back({{"kind", to_string(d.kind)}, {"message", d.message}, {"indices", index_json(d.indices)}});
      s.lines.push_back(std::string(to_string(d.kind)) + ": " + d.message +
                        (d.indices.empty() ? "" : " " + index_string(d.indices)));
    }
    if (v.saturation) {
      Json rows = Json::array();
      for (const auto& r : v.saturation->row_list()) rows.push_back(int_vector_json(r));
      s.results["saturation"] = rows;
      s.lines.push_back("saturated basis: " + rows.dump());
    }
    if (v.valid()) {
      const TorusSpec& t = *v.spec;
      s.results["N"] = t.ambient_rank();
      s.results["d"] = t.rank();
      s.results["n"] = t.quotient_rank();
      Json weights = Json::array(), gale = Json::array();
      for (std::size_t i = 0; i < t.ambient_rank(); ++i) weights.push_back(int_vector_json(t.weight(i)));
      for (const auto& r : t.gale().row_list()) gale.push_back(int_vector_json(r));
      s.results["weights"] = weights;
      s.results["gale_dual"] = gale;
      s.lines.insert(s.lines.begin(), "valid: N = " + std::to_string(t.ambient_rank()) + ", d = " +
                                          std::to_string(t.rank()) + ", n = " + std::to_string(t.quotient_rank()));
      std::vector<std::string> ws;
      for (std::size_t i = 0; i < t.ambient_rank(); ++i)
        ws.push_back("a" + std::to_string(i + 1) + " = " + format_vector(t.weight(i)));
      s.lines.push_back("weights: " + join(ws, ", "));
    } else {
      s.lines.insert(s.lines.begin(), "invalid");
    }
    s.results["diagnostics"] = diags;
    diagnostics_ok_ = v.valid();
    return s;
  }

  Section walls_section() {
    Section s;
    Json list = Json::array();
    for (const auto& w : walls()) {
      list.push_back({{"id", w.id + 1},
                      {"normal", int_vector_json(w.normal)},
                      {"circuit", index_json(w.circuit)},
                      {"span_set", index_json(w.span_set)}});
      s.lines.push_back("W" + std::to_string(w.id + 1) + ": Y = " + format_vector(w.normal) +
                        ", J = " + index_string(w.circuit));
    }
    s.results["count"] = walls().size();
    s.results["walls"] = list;
    s.lines.insert(s.lines.begin(), std::to_string(walls().size()) + " walls");
    return s;
  }

  Section regular() {
    Section s;
    const auto r = is_regular_value(walls(), parameter());
    s.results["regular"] = r.regular;
    Json ids = Json::array();
    for (auto id : r.violating) ids.push_back(id + 1);
    s.results["violating_walls"] = ids;
    std::string line = r.regular ? "regular" : "not regular: on";
    for (auto id : r.violating) line += " W" + std::to_string(id + 1);
    s.lines.push_back(line);
    return s;
  }

  Section smooth() {
    Section s;
    const auto r = is_smooth(spec());
    s.results["smooth"] = r.smooth;
    s.results["witness"] = r.witness ? index_json(*r.witness) : Json(nullptr);
    s.lines.push_back(r.smooth ? "smooth" : "not smooth: minor on columns " + index_string(*r.witness));
    return s;
  }

  const CoreData& core() {
    if (!core_) core_ = analyze_core(spec(), parameter().alpha, enum_opt_);
    return *core_;
  }

  Section arrangement() {
    Section s;
    const CoreData& c = core();
    const auto nz = spec().nonzero_weights();
    s.results["dimension"] = c.arrangement.dimension;
    s.results["h"] = rat_vector_json(c.arrangement.h);
    Json hs = Json::array();
    for (const auto& H : c.arrangement.hyperplanes) {
      const std::size_t original = nz[H.index];
      hs.push_back({{"index", original + 1}, {"normal", int_vector_json(H.normal)}, {"offset", to_string(H.offset)}});
      s.lines.push_back("F" + std::to_string(original + 1) + ": " + format_vector(H.normal) + ".p + " +
                        to_string(H.offset) + " = 0" + (H.empty() ? "  (empty)" : ""));
    }
    s.results["hyperplanes"] = hs;
    Json fs = Json::array();
    std::size_t bounded = 0;
    for (const auto& f : c.faces) {
      fs.push_back({{"sign", f.sign.str()}, {"dim", f.dim}, {"bounded", f.bounded}, {"witness", rat_vector_json(f.witness)}});
      bounded += f.bounded;
    }
    s.results["face_count"] = c.faces.size();
    s.results["bounded_face_count"] = bounded;
    s.results["faces"] = fs;
    s.lines.insert(s.lines.begin(), std::to_string(c.faces.size()) + " faces, " + std::to_string(bounded) + " bounded");
    if (!opt_.svg_path.empty()) write_svg(arrangement_svg(c.arrangement, c.faces));
    return s;
  }

  Section betti() {
    Section s;
    const CoreData& c = core();
    const PoincarePolynomial P = poincare_from_face_counts(c.complex.face_counts);
    Json counts = Json::array(), coeffs = Json::array();
    for (auto k : c.complex.face_counts) counts.push_back(k);
    for (const auto& b : P.coefficients) coeffs.push_back(integer_json(b));
    s.results["face_counts"] = counts;
    s.results["betti"] = coeffs;
    s.results["poincare"] = P.str();
    s.results["euler_characteristic"] = integer_json(c.complex.euler_characteristic());
    s.lines.push_back("P = " + P.str());
    std::vector<std::string> d;
    for (auto k : c.complex.face_counts) d.push_back(std::to_string(k));
    s.lines.push_back("face counts d = (" + join(d, ", ") + ")");
    return s;
  }

  Section ring(const std::string& mode, bool reduced) {
    Section s;
    RingPresentation p;
    if (mode == "circuits") {
      p = cohomology_presentation(spec(), PresentationMode::Circuits);
    } else if (mode == "intersections") {
      p = cohomology_presentation(spec(), PresentationMode::EmptyIntersections, parameter().alpha);
    } else {
      throw CLI::ValidationError("--mode", "expected circuits or intersections");
    }
    present(s, p, mode);
    if (reduced) add_reduced(s, p);
    return s;
  }

  Section core_section() {
    Section s;
    const CoreData& c = core();
    if (!spec().zero_weights().empty()) throw PreconditionError("split trivial H factors first");
    const auto dec = core_components(spec(), c.complex, c.faces);
    Json comps = Json::array();
    for (const auto& ch : dec.components) {
      Json verts = Json::array();
      for (const auto& v : ch.vertices) verts.push_back(rat_vector_json(v));
      const RingPresentation ideal = component_ideal(spec(), parameter().alpha, ch.sign, enum_opt_);
      const auto red = reduce_presentation(ideal, spec());
      Json mons = Json::array();
      for (const auto& m : ideal.monomials) mons.push_back(monomial_string(m));
      comps.push_back({{"sign", ch.sign.str()},
                       {"vertices", verts},
                       {"facets", index_json(ch.facets)},
                       {"monomial_relations", mons},
                       {"reduced_ring", red.str()}});
      s.lines.push_back("component " + ch.sign.str() + ": " + std::to_string(ch.vertices.size()) + " vertices, ring " +
                        red.str());
    }
    Json xs = Json::array();
    for (const auto& x : dec.intersections) {
      Json item = {{"first", dec.components[x.first].sign.str()}, {"second", dec.components[x.second].sign.str()}};
      if (x.face) {
        item["face"] = c.complex.faces[*x.face].sign.str();
        item["dim"] = c.complex.faces[*x.face].dim;
      } else {
        item["face"] = nullptr;
        item["dim"] = nullptr;
      }
      xs.push_back(item);
      s.lines.push_back(dec.components[x.first].sign.str() + " meets " + dec.components[x.second].sign.str() +
                        (x.face ? " in a " + std::to_string(c.complex.faces[*x.face].dim) + "-face " +
                                      c.complex.faces[*x.face].sign.str()
                                : " nowhere"));
    }
    s.results["components"] = comps;
    s.results["intersections"] = xs;
    s.lines.insert(s.lines.begin(), std::to_string(dec.components.size()) + " core components");
    return s;
  }

  Section chambers() {
    Section s;
    Parameter beta = Parameter::zero(spec().rank());
    beta.beta_re = file_.beta_re;
    beta.beta_im = file_.beta_im;
    const auto cs = enumerate_chambers(spec(), walls(), beta);
    Json active = Json::array(), list = Json::array();
    for (auto id : cs.active) active.push_back(id + 1);
    for (const auto& ch : cs.chambers) {
      list.push_back({{"sign", ch.sign.str()}, {"witness", int_vector_json(ch.witness)}});
      s.lines.push_back(ch.sign.str() + " witness alpha = " + format_vector(ch.witness));
    }
    s.results["active_walls"] = active;
    s.results["count"] = cs.chambers.size();
    s.results["chambers"] = list;
    if (file_.alpha) {
      const auto loc = chamber_of(walls(), cs.active, *file_.alpha);
      s.results["alpha_chamber"] = loc.sign ? Json(loc.sign->str()) : Json(nullptr);
      Json on = Json::array();
      for (auto id : loc.on_walls) on.push_back(id + 1);
      s.results["alpha_on_walls"] = on;
      if (loc.sign)
        s.lines.push_back("alpha lies in " + loc.sign->str());
      else
        s.lines.push_back("alpha lies on " + join([&] {
                            std::vector<std::string> w;
                            for (auto id : loc.on_walls) w.push_back("W" + std::to_string(id + 1));
                            return w;
                          }(), ", "));
    }
    s.lines.insert(s.lines.begin(), std::to_string(cs.chambers.size()) + " chambers");
    if (!opt_.svg_path.empty()) write_svg(chamber_svg(spec(), walls(), cs));
    return s;
  }

  Section cross(const RatVector& target) {
    Section s;
    const Parameter p = parameter();
    const auto rep = classify_crossing(spec(), walls(), p, p.alpha, target);
    s.results["wall"] = rep.wall + 1;
    s.results["circuit"] = index_json(rep.circuit);
    s.results["kind"] = to_string(rep.kind);
    s.results["fiber_projective_dim"] = rep.fiber_projective_dim ? Json(*rep.fiber_projective_dim) : Json(nullptr);
    s.results["codim"] = rep.codim ? Json(*rep.codim) : Json(nullptr);
    s.results["alpha_on_wall"] = rat_vector_json(rep.alpha_on_wall);
    Json rows = Json::array();
    for (const auto& r : rep.v0.spec.basis().row_list()) rows.push_back(int_vector_json(r));
    s.results["v0"] = {{"columns", index_json(rep.v0.columns)},
                       {"N", rep.v0.spec.ambient_rank()},
                       {"d", rep.v0.spec.rank()},
                       {"n", rep.v0.spec.quotient_rank()},
                       {"basis", rows},
                       {"alpha", rat_vector_json(rep.v0_parameter.alpha)},
                       {"beta_re", rat_vector_json(rep.v0_parameter.beta_re)},
                       {"beta_im", rat_vector_json(rep.v0_parameter.beta_im)}};
    s.lines.push_back("crossing W" + std::to_string(rep.wall + 1) + ", J = " + index_string(rep.circuit) + ": " +
                      to_string(rep.kind));
    if (rep.kind == CrossingKind::MukaiFlop)
      s.lines.push_back("fiber CP^" + std::to_string(*rep.fiber_projective_dim) + ", codim " + std::to_string(*rep.codim));
    s.lines.push_back("V0: coordinates " + index_string(rep.v0.columns) + ", basis " + rows.dump() + ", n = " +
                      std::to_string(rep.v0.spec.quotient_rank()));
    return s;
  }

  Section stability() {
    Section s;
    if (!file_.moduli) throw PreconditionError("spec has no [point]");
    const ExactModuli& m = *file_.moduli;
    const RatVector alpha = parameter().alpha;
    const bool semi = is_semistable(m, alpha, spec());
    const bool closed = has_closed_orbit(m, alpha, spec());
    const auto X = destabilizing_direction(m, alpha, spec());
    s.results["moment_real"] = rat_vector_json(moment_real(m, spec()));
    s.results["semistable"] = semi;
    s.results["closed_orbit"] = closed;
    s.results["destabilizing_direction"] = X ? int_vector_json(*X) : Json(nullptr);
    s.lines.push_back(std::string(semi ? "semistable" : "not semistable") + ", " +
                      (closed ? "closed orbit" : "orbit not closed"));
    if (X) s.lines.push_back("destabilizing direction X = " + format_vector(*X));
    return s;
  }

  Section flow() {
    Section s;
    if (!file_.moduli) throw PreconditionError("spec has no [point]");
    const FlowOptions fo{opt_.tol, opt_.max_iter};
    const FlowResult r = file_.point ? kempf_ness_descent(*file_.point, parameter(), spec(), fo)
                                     : kempf_ness_descent(*file_.moduli, parameter().alpha, spec(), fo);
    s.results["status"] = to_string(r.status);
    Json xs = Json::array();
    std::vector<std::string> parts;
    for (double x : r.minimizer) {
      xs.push_back(x);
      std::ostringstream os;
      os.precision(10);
      os << x;
      parts.push_back(os.str());
    }
    s.results["minimizer"] = xs;
    s.results["residual"] = r.residual;
    s.results["iterations"] = r.iterations;
    s.results["certificate"] = r.certificate ? int_vector_json(*r.certificate) : Json(nullptr);
    for (const auto& w : r.warnings) warnings_.push_back(w);
    s.lines.push_back(std::string(to_string(r.status)) + ", X* = (" + join(parts, ", ") + ")");
    if (r.certificate) s.lines.push_back("certificate X = " + format_vector(*r.certificate));
    return s;
  }

  Section period_section() {
    Section s;
    const auto p = period(spec(), walls(), parameter());
    s.results["omega_1"] = rat_vector_json(p.omega_1);
    s.results["omega_c_re"] = rat_vector_json(p.omega_re);
    s.results["omega_c_im"] = rat_vector_json(p.omega_im);
    s.lines.push_back("[omega_1] = " + format_vector(p.omega_1));
    s.lines.push_back("[omega_C] = " + format_vector(p.omega_re) + " + i" + format_vector(p.omega_im));
    return s;
  }

  Section kirwan() {
    Section s;
    const auto k = kirwan_surjectivity_check(spec(), parameter().alpha, enum_opt_);
    s.results["surjective"] = k.surjective;
    s.results["betti_sum"] = integer_json(k.betti_sum);
    s.results["vertex_count"] = k.vertex_count;
    s.results["top_degree"] = k.top_degree;
    s.results["max_face_dim"] = k.max_face_dim;
    s.lines.push_back(std::string(k.surjective ? "surjective" : "NOT surjective") + ": sum b = " + to_string(k.betti_sum) +
                      ", d0 = " + std::to_string(k.vertex_count));
    return s;
  }

  std::vector<std::string>& warnings() { return warnings_; }
  bool diagnostics_ok() const { return diagnostics_ok_; }

 private:
  void present(Section& s, const RingPresentation& p, const std::string& mode) {
    Json lin = Json::array(), mons = Json::array();
    std::vector<std::string> ls, ms;
    for (const auto& r : p.linear_relations) {
      lin.push_back({{"vector", int_vector_json(r)}, {"text", relation_string(r)}});
      ls.push_back(relation_string(r));
    }
    for (const auto& m : p.monomials) {
      mons.push_back({{"indices", index_json(m)}, {"text", monomial_string(m)}});
      ms.push_back(monomial_string(m));
    }
    s.results["mode"] = mode;
    s.results["nvars"] = p.nvars;
    s.results["linear_relations"] = lin;
    s.results["monomial_relations"] = mons;
    s.results["coefficients"] = to_string(p.coefficients);
    s.lines.push_back("linear relations: " + (ls.empty() ? "none" : join(ls, ", ")));
    s.lines.push_back("monomial relations: " + (ms.empty() ? "none" : join(ms, ", ")));
    s.lines.push_back(std::string("coefficients: ") + to_string(p.coefficients));
  }

  void add_reduced(Section& s, const RingPresentation& p) {
    const auto red = reduce_presentation(p, spec());
    const auto h = trimmed(hilbert_function(red, spec().quotient_rank() + 1));
    Json gens = Json::array(), hj = Json::array();
    for (std::size_t g = 0; g < red.generators.size(); ++g) gens.push_back(red.generator_string(g));
    std::vector<std::string> hs;
    for (const auto& x : h) {
      hj.push_back(integer_json(x));
      hs.push_back(to_string(x));
    }
    s.results["reduced"] = {{"ring", red.str()}, {"generators", gens}, {"hilbert", hj}};
    s.lines.push_back("reduced: " + red.str());
    s.lines.push_back("hilbert function: " + join(hs, ", "));
  }

  void write_svg(const std::string& svg) {
    std::ofstream out(opt_.svg_path);
    if (!out) throw std::runtime_error("cannot write " + opt_.svg_path);
    out << svg;
  }

  Options opt_;
  SpecFile file_;
  EnumerationOptions enum_opt_;
  std::optional<TorusSpec> spec_;
  std::vector<Wall> walls_;
  std::optional<CoreData> core_;
  std::vector<std::string> warnings_;
  bool diagnostics_ok_ = true;
};

Json input_echo(const std::string& path, const SpecFile& f) {
  Json rows = Json::array();
  for (const auto& r : f.basis.row_list()) rows.push_back(int_vector_json(r));
  Json in = {{"spec", path}, {"N", f.N}, {"basis", rows}};
  in["alpha"] = f.alpha ? rat_vector_json(*f.alpha) : Json(nullptr);
  in["beta_re"] = rat_vector_json(f.beta_re);
  in["beta_im"] = rat_vector_json(f.beta_im);
  return in;
}

int run(const Options& opt) {
  const SpecFile file = parse_spec(opt.spec_path);
  Runner runner(opt, file);
  Json report = {{"command", opt.command}, {"input", input_echo(opt.spec_path, file)}};
  std::vector<std::pair<std::string, Section>> sections;
  int status = 0;

  auto single = [&](const std::string& name, const std::function<Section()>& f) { sections.emplace_back(name, f()); };
  // In `report`, a step whose preconditions fail is skipped with a warning.
  auto optional_step = [&](const std::string& name, const std::function<Section()>& f) {
    try {
      sections.emplace_back(name, f());
    } catch (const PreconditionError& e) {
      runner.warnings().push_back(name + " skipped: " + e.what());
    }
  };

  const std::string& c = opt.command;
  if (c == "validate") {
    single("validate", [&] { return runner.validate(); });
    if (!runner.diagnostics_ok()) status = 3;
  } else if (c == "walls") {
    single("walls", [&] { return runner.walls_section(); });
  } else if (c == "regular") {
    single("regular", [&] { return runner.regular(); });
  } else if (c == "smooth") {
    single("smooth", [&] { return runner.smooth(); });
  } else if (c == "arrangement") {
    single("arrangement", [&] { return runner.arrangement(); });
  } else if (c == "betti") {
    single("betti", [&] { return runner.betti(); });
  } else if (c == "ring") {
    single("ring", [&] { return runner.ring(opt.mode, opt.reduced); });
  } else if (c == "core") {
    single("core", [&] { return runner.core_section(); });
  } else if (c == "chambers") {
    single("chambers", [&] { return runner.chambers(); });
  } else if (c == "cross") {
    if (opt.to.empty()) throw CLI::ValidationError("--to", "cross requires --to <alpha>");
    const RatVector target = parse_rational_list(opt.to);
    single("cross", [&] { return runner.cross(target); });
  } else if (c == "stability") {
    single("stability", [&] { return runner.stability(); });
  } else if (c == "flow") {
    single("flow", [&] { return runner.flow(); });
  } else if (c == "period") {
    single("period", [&] { return runner.period_section(); });
  } else if (c == "kirwan") {
    single("kirwan", [&] { return runner.kirwan(); });
  } else if (c == "report") {
    single("validate", [&] { return runner.validate(); });
    if (!runner.diagnostics_ok()) {
      status = 3;
    } else {
      single("walls", [&] { return runner.walls_section(); });
      single("smooth", [&] { return runner.smooth(); });
      optional_step("regular", [&] { return runner.regular(); });
      optional_step("betti", [&] { return runner.betti(); });
      single("ring", [&] { return runner.ring("circuits", true); });
      optional_step("ring_intersections", [&] { return runner.ring("intersections", true); });
      optional_step("core", [&] { return runner.core_section(); });
      optional_step("kirwan", [&] { return runner.kirwan(); });
      single("chambers", [&] { return runner.chambers(); });
      optional_step("period", [&] { return runner.period_section(); });
      if (file.moduli) {
        optional_step("stability", [&] { return runner.stability(); });
        optional_step("flow", [&] { return runner.flow(); });
      }
    }
  } else {
    throw CLI::ValidationError("command", "unknown command '" + c + "'");
  }

  if (opt.json) {
    Json results = Json::object();
    if (c == "report") {
      for (auto& [name, s] : sections) results[name] = s.results;
    } else {
      results = sections.front().second.results;
    }
    report["results"] = results;
    report["warnings"] = runner.warnings();
    std::cout << report.dump(2) << "\n";
  } else {
    for (auto& [name, s] : sections) {
      if (c == "report") std::cout << "[" << name << "]\n";
      for (const auto& l : s.lines) std::cout << l << "\n";
    }
    for (const auto& w : runner.warnings()) std::cout << "warning: " << w << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of toric hyperkaehler varieties from integer torus data"};
  Options opt;
  if (const char* env = std::getenv("HYPERTORIC_THREADS")) {
    try {
      opt.threads = static_cast<unsigned>(std::max(1, std::stoi(env)));
    } catch (const std::exception&) {
      opt.threads = 1;
    }
  }
  const std::vector<std::string> commands{"validate", "walls", "regular", "smooth", "arrangement", "betti", "ring",
                                          "core", "chambers", "cross", "stability", "flow", "period", "kirwan", "report"};
  app.add_option("command", opt.command, "Subcommand: " + join(commands, " | "))
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("spec", opt.spec_path, "Spec file")->required();
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--svg", opt.svg_path, "Write an SVG figure (arrangement: n = 2, chambers: d = 2)");
  app.add_option("--mode", opt.mode, "ring presentation: circuits | intersections")
      ->check(CLI::IsMember({"circuits", "intersections"}));
  app.add_flag("--reduced", opt.reduced, "ring: also print the presentation in k-coordinates");
  app.add_option("--to", opt.to, "cross: target alpha, e.g. \"1,-1/2\"");
  app.add_option("--tol", opt.tol, "flow: gradient tolerance");
  app.add_option("--max-iter", opt.max_iter, "flow: iteration limit");
  app.add_option("--threads", opt.threads, "Worker threads for face enumeration (env HYPERTORIC_THREADS)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return run(opt);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
