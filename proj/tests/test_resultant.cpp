#include <doctest.h>

#include <array>

#include "biharm/errors.hpp"
#include "biharm/resultant.hpp"
#include "support.hpp"

using namespace biharm;
using biharm::testing::random_homogeneous;
using biharm::testing::random_poly;
using biharm::testing::Rng;

namespace {
const SpatialPoly X = SpatialPoly::x();
const SpatialPoly Y = SpatialPoly::y();

// Coefficients, ascending in t, of prod (t - r_i).
std::vector<SpatialPoly> monic_from_roots(const std::vector<long>& roots) {
  std::vector<SpatialPoly> c{SpatialPoly(1)};
  for (long r : roots) {
    std::vector<SpatialPoly> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= scale(c[k], FieldScalar(r));
    }
    c = next;
  }
  return c;
}
}  // namespace

TEST_CASE("linear resultant") {
  const std::vector<SpatialPoly> a{-X, 1}, c{-Y, 1};
  CHECK(sylvester_resultant(a, c) == X - Y);
}

TEST_CASE("cubic against quintic equals the product of root differences") {
  const std::vector<long> ra{1, -2, 3}, rc{0, 4, -1, 5, 2};
  long expect = 1;
  for (long u : ra)
    for (long v : rc) expect *= (u - v);
  const auto a = monic_from_roots(ra), c = monic_from_roots(rc);
  CHECK(sylvester_resultant(a, c) == SpatialPoly(FieldScalar(expect)));
  const std::vector<long> shared{1, -2, 3}, with_common{0, 4, 3, 5, 2};
  CHECK(sylvester_resultant(monic_from_roots(shared), monic_from_roots(with_common)).is_zero());
}

TEST_CASE("sylvester layout") {
  const std::vector<SpatialPoly> a{1, 2, 3, 4}, c{5, 6, 7, 8, 9, 10};
  const PolyMatrix m = sylvester_matrix(a, c);
  REQUIRE(m.size() == 8);
  CHECK(m(0, 0) == SpatialPoly(1));
  CHECK(m(0, 3) == SpatialPoly(4));
  CHECK(m(4, 4) == SpatialPoly(1));
  CHECK(m(4, 7) == SpatialPoly(4));
  CHECK(m(5, 0) == SpatialPoly(5));
  CHECK(m(7, 7) == SpatialPoly(10));
  CHECK(m(0, 4).is_zero());
  CHECK_THROWS_AS(sylvester_matrix(std::vector<SpatialPoly>{}, c), DomainError);
}

TEST_CASE("Bareiss matches cofactor expansion on random matrices") {
  Rng g(31);
  for (int trial = 0; trial < 30; ++trial) {
    PolyMatrix m(4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = random_poly(g, 2, 3);
    CHECK(determinant_bareiss(m) == determinant_cofactor(m));
  }
}

TEST_CASE("Bareiss pivots past a zero leading entry") {
  PolyMatrix m(3);
  m(0, 1) = X;
  m(0, 2) = 1;
  m(1, 0) = Y;
  m(1, 2) = X + Y;
  m(2, 0) = 1;
  m(2, 1) = 2;
  m(2, 2) = X * Y;
  CHECK(determinant_bareiss(m) == determinant_cofactor(m));
  CHECK_FALSE(determinant_bareiss(m).is_zero());
  PolyMatrix singular(2);
  singular(0, 0) = X;
  singular(0, 1) = Y;
  singular(1, 0) = scale(X, 2);
  singular(1, 1) = scale(Y, 2);
  CHECK(determinant_bareiss(singular).is_zero());
}

TEST_CASE("planted common factor gives a zero resultant") {
  Rng g(32);
  for (int trial = 0; trial < 10; ++trial) {
    // Common root t = x / y of (y t - x) * (u t^2 + v t + w) and (y t - x) * quartic.
    const std::array<SpatialPoly, 2> lin{-X, Y};
    std::vector<SpatialPoly> qa(3), qc(5);
    for (auto& p : qa) p = random_homogeneous(g, 2, 2);
    for (auto& p : qc) p = random_homogeneous(g, 2, 2);
    auto times = [&](const std::vector<SpatialPoly>& q) {
      std::vector<SpatialPoly> out(q.size() + 1);
      for (std::size_t k = 0; k < q.size(); ++k) {
        out[k] += lin[0] * q[k];
        out[k + 1] += lin[1] * q[k];
      }
      return out;
    };
    CHECK(sylvester_resultant(times(qa), times(qc)).is_zero());
  }
}

TEST_CASE("homogeneous inputs give a homogeneous resultant of the weighted degree") {
  Rng g(33);
  std::vector<SpatialPoly> a(4), c(6);
  for (auto& p : a) p = random_homogeneous(g, 3, 3);
  for (auto& p : c) p = random_homogeneous(g, 4, 3);
  const SpatialPoly r = sylvester_resultant(a, c);
  CHECK(homogeneous_degree(r).is(5 * 3 + 3 * 4));
}
