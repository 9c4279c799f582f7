#pragma once

#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "biharm/cases.hpp"
#include "biharm/field.hpp"
#include "biharm/poly.hpp"

namespace biharm::testing {

inline const Registry& registry() {
  static const Registry r = load_registry(BIHARM_TEST_REGISTRY);
  return r;
}

inline CaseSpec spec(const std::string& name, const ParamMap& params = {}) {
  const CaseTemplate* t = registry().find(name);
  if (!t) throw std::runtime_error("no registry row " + name);
  return instantiate_case(*t, params);
}

inline const nlohmann::json& golden() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(BIHARM_GOLDEN_DIR) + "/oracle.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

using Rng = std::mt19937_64;

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline BigRational random_rational(Rng& g, long range = 30) {
  return BigRational(uniform(g, -range, range), uniform(g, 1, range));
}

inline FieldScalar random_field(Rng& g, long range = 30) {
  return {random_rational(g, range), random_rational(g, range), random_rational(g, range),
          random_rational(g, range)};
}

inline FieldScalar random_nonzero_field(Rng& g) {
  FieldScalar u;
  while (u.is_zero()) u = random_field(g);
  return u;
}

inline SpatialPoly random_poly(Rng& g, int max_degree, int terms, bool rational_only = false) {
  SpatialPoly p;
  for (int k = 0; k < terms; ++k) {
    const int deg = static_cast<int>(uniform(g, 0, max_degree));
    const int a = static_cast<int>(uniform(g, 0, deg));
    const FieldScalar c = rational_only ? FieldScalar(random_rational(g)) : random_field(g, 9);
    p += SpatialPoly::monomial(c, a, deg - a);
  }
  return p;
}

inline SpatialPoly random_homogeneous(Rng& g, int degree, int terms) {
  SpatialPoly p;
  for (int k = 0; k < terms; ++k) {
    const int a = static_cast<int>(uniform(g, 0, degree));
    p += SpatialPoly::monomial(random_field(g, 9), a, degree - a);
  }
  return p;
}

}  // namespace biharm::testing
