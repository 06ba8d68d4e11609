#pragma once

// Spec files: INI-style sections whose values are JSON literals.
//
//   [torus]
//   N = 5
//   basis = [[1,1,0,1,0],
//            [1,0,1,0,1]]
//   [parameter]
//   alpha = ["3", "1"]
//   beta_re = ["0", "0"]
//   [point]
//   z2 = ["1", "0", "0", "0", "0"]     # or z = [[re, im], ...]
//   w2 = ["0", "0", "0", "0", "0"]

#include <complex>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertoric/git_stability.hpp"
#include "hypertoric/numeric.hpp"
#include "hypertoric/torus_model.hpp"

namespace hypertoric {

struct SpecFile {
  std::size_t N = 0;
  IntMatrix basis;
  std::optional<RatVector> alpha;
  RatVector beta_re;
  RatVector beta_im;
  std::optional<ExactModuli> moduli;
  std::optional<NumericPoint> point;  // only when z, w were given as complex numbers

  [[nodiscard]] Parameter parameter() const {
    if (!alpha) throw PreconditionError("spec has no alpha");
    return {*alpha, beta_re, beta_im};
  }
};

namespace detail {

struct RawValue {
  nlohmann::json value;
  std::size_t line = 0;
};

inline std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

inline int bracket_balance(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

inline Rational rational_value(const nlohmann::json& v, std::size_t line) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const ParseError& e) {
    fail(line, e.what());
  }
  fail(line, "expected a rational \"p/q\", got " + v.dump());
}

inline RatVector rational_list(const RawValue& raw, const std::string& key) {
  if (!raw.value.is_array()) fail(raw.line, key + " must be a list");
  RatVector out;
  for (const auto& v : raw.value) out.push_back(rational_value(v, raw.line));
  return out;
}

inline std::vector<std::complex<double>> complex_list(const RawValue& raw, const std::string& key) {
  if (!raw.value.is_array()) fail(raw.line, key + " must be a list");
  std::vector<std::complex<double>> out;
  for (const auto& v : raw.value) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      fail(raw.line, key + " entries must be numbers or [re, im] pairs");
    }
  }
  return out;
}

}  // namespace detail

inline SpecFile parse_spec_text(const std::string& text) {
  using detail::fail;
  std::map<std::string, std::map<std::string, detail::RawValue>> sections;
  const std::map<std::string, std::vector<std::string>> allowed{
      {"torus", {"N", "basis"}},
      {"parameter", {"alpha", "beta_re", "beta_im"}},
      {"point", {"z2", "w2", "z", "w"}}};

  std::istringstream in(text);
  std::string line, section, pending_key, pending_value;
  std::size_t lineno = 0, pending_line = 0;
  auto flush = [&] {
    try {
      sections[section][pending_key] = {nlohmann::json::parse(detail::normalize_minus(pending_value)), pending_line};
    } catch (const nlohmann::json::exception&) {
      fail(pending_line, "malformed value for '" + pending_key + "'");
    }
    pending_key.clear();
    pending_value.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::trim(detail::strip_comment(line));
    if (!pending_key.empty()) {
      pending_value += " " + body;
      if (detail::bracket_balance(pending_value) <= 0) flush();
      continue;
    }
    if (body.empty()) continue;
    if (body.front() == '[' && body.back() == ']' && body.find('=') == std::string::npos) {
      section = detail::trim(body.substr(1, body.size() - 2));
      if (!allowed.count(section)) fail(lineno, "unknown section [" + section + "]");
      if (sections.count(section)) fail(lineno, "duplicate section [" + section + "]");
      sections[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    if (section.empty()) fail(lineno, "key outside of a section");
    const std::string key = detail::trim(body.substr(0, eq));
    const auto& keys = allowed.at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(lineno, "unknown key '" + key + "' in [" + section + "]");
    if (sections[section].count(key)) fail(lineno, "duplicate key '" + key + "'");
    pending_key = key;
    pending_value = detail::trim(body.substr(eq + 1));
    pending_line = lineno;
    if (detail::bracket_balance(pending_value) <= 0) flush();
  }
  if (!pending_key.empty()) fail(pending_line, "unterminated value for '" + pending_key + "'");

  if (!sections.count("torus")) throw ParseError("missing [torus] section");
  auto& torus = sections["torus"];
  if (!torus.count("basis")) throw ParseError("missing basis in [torus]");
  const auto& basis = torus["basis"];
  if (!basis.value.is_array()) fail(basis.line, "basis must be a list of rows");

  SpecFile spec;
  std::optional<std::size_t> declared;
  if (torus.count("N")) {
    const auto& nv = torus["N"];
    if (!nv.value.is_number_unsigned()) fail(nv.line, "N must be a nonnegative integer");
    declared = nv.value.get<std::size_t>();
  }
  std::vector<IntVector> rows;
  std::size_t width = declared.value_or(basis.value.empty() ? 0 : basis.value[0].size());
  for (std::size_t r = 0; r < basis.value.size(); ++r) {
    const auto& row = basis.value[r];
    if (!row.is_array()) fail(basis.line, "basis row " + std::to_string(r + 1) + " is not a list");
    if (row.size() != width)
      fail(basis.line, "basis row " + std::to_string(r + 1) + " has length " + std::to_string(row.size()) +
                           ", expected " + std::to_string(width));
    IntVector v;
    for (const auto& x : row) {
      if (x.is_number_integer()) {
        v.emplace_back(x.get<long long>());
      } else if (x.is_string()) {
        const std::string s = detail::normalize_minus(x.get<std::string>());
        if (!detail::is_integer_literal(s)) fail(basis.line, "basis entries must be integers");
        v.push_back(detail::decimal_integer(s));
      } else {
        fail(basis.line, "basis entries must be integers");
      }
    }
    rows.push_back(std::move(v));
  }
  spec.N = width;
  spec.basis = IntMatrix::from_rows(rows, width);
  const std::size_t d = rows.size();

  spec.beta_re.assign(d, Rational(0));
  spec.beta_im.assign(d, Rational(0));
  if (sections.count("parameter")) {
    auto& p = sections["parameter"];
    auto load = [&](const std::string& key, RatVector& target) {
      if (!p.count(key)) return false;
      target = detail::rational_list(p[key], key);
      if (target.size() != d) fail(p[key].line, key + " must have length d = " + std::to_string(d));
      return true;
    };
    RatVector a;
    if (load("alpha", a)) spec.alpha = a;
    load("beta_re", spec.beta_re);
    load("beta_im", spec.beta_im);
  }
  if (sections.count("point")) {
    auto& p = sections["point"];
    const bool exact = p.count("z2") || p.count("w2");
    const bool numeric = p.count("z") || p.count("w");
    if (exact && numeric) throw ParseError("[point] mixes z2/w2 with z/w");
    auto check = [&](std::size_t len, const std::string& key) {
      if (len != spec.N) fail(p[key].line, key + " must have length N = " + std::to_string(spec.N));
    };
    if (exact) {
      ExactModuli m{RatVector(spec.N), RatVector(spec.N)};
      if (p.count("z2")) {
        m.z2 = detail::rational_list(p["z2"], "z2");
        check(m.z2.size(), "z2");
      }
      if (p.count("w2")) {
        m.w2 = detail::rational_list(p["w2"], "w2");
        check(m.w2.size(), "w2");
      }
      for (std::size_t i = 0; i < spec.N; ++i)
        if (m.z2[i] < 0 || m.w2[i] < 0) throw ParseError("z2, w2 entries must be nonnegative");
      spec.moduli = m;
    } else if (numeric) {
      NumericPoint pt{std::vector<std::complex<double>>(spec.N), std::vector<std::complex<double>>(spec.N)};
      if (p.count("z")) {
        pt.z = detail::complex_list(p["z"], "z");
        check(pt.z.size(), "z");
      }
      if (p.count("w")) {
        pt.w = detail::complex_list(p["w"], "w");
        check(pt.w.size(), "w");
      }
      spec.moduli = pt.moduli();
      spec.point = pt;
    }
  }
  return spec;
}

inline SpecFile parse_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_spec_text(buf.str());
}

}  // namespace hypertoric
