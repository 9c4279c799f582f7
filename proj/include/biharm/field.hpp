#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "biharm/highprec.hpp"
#include "biharm/rational.hpp"

namespace biharm {

/// Element a + b*sqrt(2) + c*sqrt(3) + e*sqrt(6) of Q(sqrt 2, sqrt 3).
///
/// Every sine and cosine of i*pi/d for d in {1, 2, 3, 4, 6} lives here, so the
/// wall functions and everything built from them are exact. Equality is
/// componentwise because {1, r2, r3, r6} is a Q-basis of the field.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(BigRational v) : a_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  FieldScalar(BigRational a, BigRational b, BigRational c, BigRational e)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), e_(std::move(e)) {}

  static FieldScalar sqrt2() { return {0, 1, 0, 0}; }
  static FieldScalar sqrt3() { return {0, 0, 1, 0}; }
  static FieldScalar sqrt6() { return {0, 0, 0, 1}; }

  /// Inverse of to_string(); a bare rational "p/q" is also accepted.
  static FieldScalar parse(std::string_view text);

  const BigRational& rational_part() const noexcept { return a_; }
  const BigRational& sqrt2_part() const noexcept { return b_; }
  const BigRational& sqrt3_part() const noexcept { return c_; }
  const BigRational& sqrt6_part() const noexcept { return e_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero() && c_.is_zero() && e_.is_zero(); }
  bool is_rational() const noexcept { return b_.is_zero() && c_.is_zero() && e_.is_zero(); }
  bool is_one() const noexcept { return is_rational() && a_.is_one(); }

  /// Multiplicative inverse via the three nontrivial Galois conjugates.
  /// Throws DomainError for zero.
  FieldScalar inverse() const;

  /// Image under sqrt2 -> -sqrt2 (and/or sqrt3 -> -sqrt3).
  FieldScalar conjugate(bool flip_sqrt2, bool flip_sqrt3) const;

  /// Rational norm: product of all four conjugates.
  BigRational norm() const;

  /// "a + b*r2 + c*r3 + e*r6", every component always present.
  std::string to_string() const;

  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

  /// this += u * v without materialising the product.
  void add_product(const FieldScalar& u, const FieldScalar& v);

  friend FieldScalar operator+(FieldScalar u, const FieldScalar& v) { return u += v; }
  friend FieldScalar operator-(FieldScalar u, const FieldScalar& v) { return u -= v; }
  friend FieldScalar operator*(const FieldScalar& u, const FieldScalar& v);
  friend FieldScalar operator/(FieldScalar u, const FieldScalar& v) { return u /= v; }
  friend FieldScalar operator-(const FieldScalar& u) { return {-u.a_, -u.b_, -u.c_, -u.e_}; }
  friend bool operator==(const FieldScalar& u, const FieldScalar& v) = default;

 private:
  BigRational a_, b_, c_, e_;
};

enum class ArithOp { add, sub, mul, neg, inv };

/// Dispatching form of the field operations; `v` is ignored for neg and inv.
FieldScalar field_arith(ArithOp op, const FieldScalar& u, const FieldScalar& v = FieldScalar());

struct TrigPair {
  FieldScalar sin_val;
  FieldScalar cos_val;
};

/// Exact (sin(i*pi/d), cos(i*pi/d)). d must be one of 1, 2, 3, 4, 6 and 0 <= i < d.
TrigPair trig_pair(int d, int i);

bool admissible_d(int d) noexcept;

/// Real embedding with absolute error below 2^(4 - precision_bits).
/// The working precision grows with the magnitude of the components so the
/// bound holds even under cancellation; the result carries that precision.
HighFloat embed_real(const FieldScalar& u, long precision_bits);

double to_double(const FieldScalar& u);

}  // namespace biharm
