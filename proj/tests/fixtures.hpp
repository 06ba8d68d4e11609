#pragma once

#include <string>

#include "hypertoric/spec_file.hpp"
#include "hypertoric/torus_model.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(HYPERTORIC_FIXTURES_DIR) + "/" + name; }

struct LoadedFixture {
  hypertoric::SpecFile file;
  hypertoric::TorusSpec spec;
};

inline LoadedFixture load_fixture(const std::string& name) {
  auto file = hypertoric::parse_spec(fixture_path(name));
  auto spec = hypertoric::TorusSpec::from_basis(file.basis);
  return {std::move(file), std::move(spec)};
}

inline hypertoric::TorusSpec example1(std::size_t n) {
  hypertoric::IntMatrix B(1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) B(0, i) = 1;
  return hypertoric::TorusSpec::from_basis(B);
}

inline hypertoric::TorusSpec example2() {
  return hypertoric::TorusSpec::from_basis(hypertoric::IntMatrix{{1, 1, 0, 1, 0}, {1, 0, 1, 0, 1}});
}

// 0-based index sets, written 1-based for readability.
inline std::vector<std::size_t> idx(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> out;
  for (auto i : one_based) out.push_back(i - 1);
  return out;
}

}  // namespace testing_support
