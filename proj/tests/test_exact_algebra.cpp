#include <doctest.h>

#include <cmath>

#include "biharm/errors.hpp"
#include "biharm/field.hpp"
#include "biharm/highprec.hpp"
#include "biharm/rational.hpp"
#include "support.hpp"

using namespace biharm;
using biharm::testing::random_field;
using biharm::testing::random_nonzero_field;
using biharm::testing::Rng;

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(BigRational(6, 4) == BigRational(3, 2));
  CHECK(BigRational(3, -6) == BigRational(-1, 2));
  CHECK(BigRational(3, -6).denominator() == 2);
  CHECK(BigRational(10, 5).to_string() == "2");
  CHECK(BigRational::parse("-14/21") == BigRational(-2, 3));
  CHECK(BigRational::parse("7") == BigRational(7));
  CHECK_THROWS_AS(BigRational(1, 0), DomainError);
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), DomainError);
  CHECK_THROWS_AS(BigRational::parse("1/"), ParseError);
  CHECK_THROWS_AS(BigRational::parse("abc"), ParseError);
  CHECK(BigRational(-1, 3) < BigRational(1, 4));
  BigRational acc(1, 2);
  acc.add_product(BigRational(2, 3), BigRational(3, 4));
  CHECK(acc == BigRational(1));
}

TEST_CASE("quadratic basis products") {
  const FieldScalar r2 = FieldScalar::sqrt2(), r3 = FieldScalar::sqrt3(), r6 = FieldScalar::sqrt6();
  CHECK(r2 * r2 == FieldScalar(2));
  CHECK(r3 * r3 == FieldScalar(3));
  CHECK(r6 * r6 == FieldScalar(6));
  CHECK(r2 * r3 == r6);
  CHECK(r2 * r6 == FieldScalar(2) * r3);
  CHECK(r3 * r6 == FieldScalar(3) * r2);
  CHECK((FieldScalar(1) + r2).inverse() == FieldScalar(-1) + r2);
  CHECK_THROWS_AS(FieldScalar().inverse(), DomainError);
  CHECK_THROWS_AS(FieldScalar(1) / FieldScalar(0), DomainError);
}

TEST_CASE("field ring axioms on random elements") {
  Rng g(11);
  for (int k = 0; k < 200; ++k) {
    const FieldScalar u = random_field(g), v = random_field(g), w = random_field(g);
    CHECK(u + v == v + u);
    CHECK(u * v == v * u);
    CHECK((u + v) + w == u + (v + w));
    CHECK((u * v) * w == u * (v * w));
    CHECK(u * (v + w) == u * v + u * w);
    CHECK(u - u == FieldScalar());
    CHECK(u + (-u) == FieldScalar());
    CHECK(field_arith(ArithOp::sub, u, v) == u - v);
    CHECK(field_arith(ArithOp::neg, u) == -u);
  }
}

TEST_CASE("inverse and norm") {
  Rng g(12);
  for (int k = 0; k < 100; ++k) {
    const FieldScalar u = random_nonzero_field(g);
    CHECK(u * u.inverse() == FieldScalar(1));
    CHECK(field_arith(ArithOp::inv, u) == u.inverse());
    const FieldScalar prod = u * u.conjugate(true, false) * u.conjugate(false, true) * u.conjugate(true, true);
    CHECK(prod.is_rational());
    CHECK(prod.rational_part() == u.norm());
  }
}

TEST_CASE("Galois conjugation is a ring homomorphism") {
  Rng g(13);
  for (int k = 0; k < 100; ++k) {
    const FieldScalar u = random_field(g), v = random_field(g);
    for (bool f2 : {false, true})
      for (bool f3 : {false, true}) {
        CHECK((u * v).conjugate(f2, f3) == u.conjugate(f2, f3) * v.conjugate(f2, f3));
        CHECK((u + v).conjugate(f2, f3) == u.conjugate(f2, f3) + v.conjugate(f2, f3));
      }
  }
}

TEST_CASE("text form round trip") {
  Rng g(14);
  for (int k = 0; k < 100; ++k) {
    const FieldScalar u = random_field(g);
    CHECK(FieldScalar::parse(u.to_string()) == u);
  }
  CHECK(FieldScalar(BigRational(1, 2)).to_string() == "1/2 + 0*r2 + 0*r3 + 0*r6");
  CHECK(FieldScalar::parse("-3/4") == FieldScalar(BigRational(-3, 4)));
  CHECK_THROWS_AS(FieldScalar::parse("1 + 2*r5 + 0*r3 + 0*r6"), ParseError);
  CHECK_THROWS_AS(FieldScalar::parse("1 + 2*r2"), ParseError);
}

TEST_CASE("exact trigonometric table") {
  const FieldScalar half(BigRational(1, 2));
  const TrigPair q = trig_pair(4, 1);
  CHECK(q.sin_val == half * FieldScalar::sqrt2());
  CHECK(q.cos_val == half * FieldScalar::sqrt2());
  const TrigPair s = trig_pair(6, 1);
  CHECK(s.sin_val == half);
  CHECK(s.cos_val == half * FieldScalar::sqrt3());
  const TrigPair t = trig_pair(3, 2);
  CHECK(t.sin_val == half * FieldScalar::sqrt3());
  CHECK(t.cos_val == -half);
  CHECK(trig_pair(1, 0).sin_val == FieldScalar(0));
  CHECK(trig_pair(1, 0).cos_val == FieldScalar(1));
  CHECK(trig_pair(2, 1).sin_val == FieldScalar(1));
  CHECK(trig_pair(2, 1).cos_val == FieldScalar(0));
  for (int d : {1, 2, 3, 4, 6})
    for (int i = 0; i < d; ++i) {
      const TrigPair p = trig_pair(d, i);
      CHECK(p.sin_val * p.sin_val + p.cos_val * p.cos_val == FieldScalar(1));
      CHECK(to_double(p.sin_val) == doctest::Approx(std::sin(i * M_PI / d)).epsilon(1e-15));
      CHECK(to_double(p.cos_val) == doctest::Approx(std::cos(i * M_PI / d)).epsilon(1e-15));
    }
  CHECK_THROWS_AS(trig_pair(5, 1), UnsupportedCaseError);
  CHECK_THROWS_AS(trig_pair(4, 4), DomainError);
  CHECK_THROWS_AS(trig_pair(4, -1), DomainError);
  CHECK_FALSE(admissible_d(5));
  CHECK(admissible_d(6));
}

TEST_CASE("real embedding") {
  const long prec = 200;
  const HighFloat r2 = embed_real(FieldScalar::sqrt2(), prec);
  CHECK(abs(r2 - HighFloat::sqrt_of(2, prec)) < HighFloat(std::ldexp(1.0, -196), prec));
  CHECK(embed_real(FieldScalar::sqrt6(), 100).to_double() == doctest::Approx(std::sqrt(6.0)));

  // 665857 - 470832*sqrt2 is about 7.5e-7: heavy cancellation.
  const FieldScalar pell(BigRational(665857), BigRational(-470832), BigRational(0), BigRational(0));
  const HighFloat lo = embed_real(pell, 80);
  const HighFloat hi = embed_real(pell, 400);
  CHECK(abs(lo - hi) < HighFloat(std::ldexp(1.0, -76), 400));
  CHECK(hi.to_double() == doctest::Approx(1.0 / (665857.0 + 470832.0 * std::sqrt(2.0))).epsilon(1e-12));

  Rng g(15);
  for (int k = 0; k < 50; ++k) {
    const FieldScalar u = random_field(g), v = random_field(g);
    const HighFloat lhs = embed_real(u * v, prec);
    const HighFloat rhs = embed_real(u, prec) * embed_real(v, prec);
    HighFloat scale = abs(embed_real(u, prec)) * abs(embed_real(v, prec)) + HighFloat(1.0, prec);
    CHECK(abs(lhs - rhs) < scale * HighFloat(std::ldexp(1.0, -180), prec));
  }
}

TEST_CASE("high precision float basics") {
  const HighFloat a(1.5, 128), b(BigRational(1, 3), 256);
  CHECK((a * b).precision() == 256);
  CHECK((a + b).to_double() == doctest::Approx(1.5 + 1.0 / 3));
  CHECK(HighFloat(HighFloat::pi(300), 64).precision() == 64);
  const HighFloat s = sin(HighFloat::pi(200) / HighFloat(6.0, 200));
  CHECK(abs(s - HighFloat(0.5, 200)) < HighFloat(1e-55, 200));
  CHECK(pow(HighFloat(2.0, 64), 10).to_double() == 1024.0);
  CHECK(HighFloat(0.0, 64).is_zero());
  CHECK((-a).sign() < 0);
}
