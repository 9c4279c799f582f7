#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biharm/field.hpp"
#include "biharm/highprec.hpp"

namespace biharm {

struct Exponent {
  int x = 0;
  int y = 0;
  int total() const noexcept { return x + y; }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Descending total degree, ties broken by descending x-exponent. This is a
/// graded monomial order, so the first stored term is the leading term.
struct CanonicalOrder {
  bool operator()(const Exponent& a, const Exponent& b) const noexcept {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.x > b.x;
  }
};

enum class Var { x, y };

/// Sparse polynomial in (x, y) over Q(sqrt2, sqrt3). Zero coefficients are never stored.
class SpatialPoly {
 public:
  using TermMap = std::map<Exponent, FieldScalar, CanonicalOrder>;

  SpatialPoly() = default;
  SpatialPoly(const FieldScalar& c);  // NOLINT(google-explicit-constructor)
  SpatialPoly(long c) : SpatialPoly(FieldScalar(c)) {}  // NOLINT(google-explicit-constructor)

  static SpatialPoly monomial(const FieldScalar& c, int x_exp, int y_exp);
  static SpatialPoly x() { return monomial(1, 1, 0); }
  static SpatialPoly y() { return monomial(1, 0, 1); }
  /// cx * x + cy * y
  static SpatialPoly linear(const FieldScalar& cx, const FieldScalar& cy);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  FieldScalar coefficient(int x_exp, int y_exp) const;
  /// -1 for the zero polynomial.
  int total_degree() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.total(); }

  void add_term(const Exponent& e, const FieldScalar& c);
  /// this += c * (monomial e) * p
  void add_scaled(const SpatialPoly& p, const FieldScalar& c, const Exponent& e = {});

  SpatialPoly& operator+=(const SpatialPoly& o);
  SpatialPoly& operator-=(const SpatialPoly& o);
  SpatialPoly& operator*=(const SpatialPoly& o);
  SpatialPoly& operator*=(const FieldScalar& c);

  friend SpatialPoly operator+(SpatialPoly a, const SpatialPoly& b) { return a += b; }
  friend SpatialPoly operator-(SpatialPoly a, const SpatialPoly& b) { return a -= b; }
  friend SpatialPoly operator*(const SpatialPoly& a, const SpatialPoly& b);
  friend SpatialPoly operator*(SpatialPoly a, const FieldScalar& c) { return a *= c; }
  friend SpatialPoly operator*(const FieldScalar& c, SpatialPoly a) { return a *= c; }
  friend SpatialPoly operator-(const SpatialPoly& a);
  friend bool operator==(const SpatialPoly& a, const SpatialPoly& b) { return a.terms_ == b.terms_; }

  /// p(y, x)
  SpatialPoly swapped() const;

 private:
  TermMap terms_;
};

enum class PolyArithOp { add, sub, mul, scale };

SpatialPoly poly_arith(PolyArithOp op, const SpatialPoly& p, const SpatialPoly& q);
SpatialPoly scale(const SpatialPoly& p, const FieldScalar& c);
SpatialPoly pow(const SpatialPoly& p, unsigned e);

SpatialPoly partial_derivative(const SpatialPoly& p, Var v);

enum class Homogeneity { homogeneous, not_homogeneous, zero };

struct DegreeInfo {
  Homogeneity kind = Homogeneity::zero;
  int degree = -1;  // meaningful only when kind == homogeneous

  bool is(int d) const noexcept { return kind == Homogeneity::homogeneous && degree == d; }
  std::string to_string() const;
};

DegreeInfo homogeneous_degree(const SpatialPoly& p);

/// Quotient when `den` divides `num` exactly, nullopt otherwise. Leading-term
/// division in the canonical order; `den` must be nonzero.
std::optional<SpatialPoly> try_divide_exact(const SpatialPoly& num, const SpatialPoly& den);
/// As above, throwing DomainError on a nonzero remainder.
SpatialPoly divide_exact(const SpatialPoly& num, const SpatialPoly& den);

FieldScalar evaluate(const SpatialPoly& p, const FieldScalar& x, const FieldScalar& y);
double evaluate(const SpatialPoly& p, double x, double y);
/// Coefficients embedded at `precision_bits`.
HighFloat evaluate(const SpatialPoly& p, const HighFloat& x, const HighFloat& y, long precision_bits);

/// Largest |coefficient| as a double (0 for the zero polynomial).
double max_abs_coefficient(const SpatialPoly& p);

/// Canonical text: "(c)*x^a*y^b + ..." in canonical order, "0" for zero.
std::string to_string(const SpatialPoly& p);
SpatialPoly parse_spatial_poly(std::string_view text);

/// Double-coefficient snapshot of a SpatialPoly for fast repeated evaluation.
class FloatPoly {
 public:
  FloatPoly() = default;
  explicit FloatPoly(const SpatialPoly& p);

  double operator()(double x, double y) const;
  /// Sum of |c| |x|^a |y|^b; the natural magnitude scale of a value.
  double magnitude(double x, double y) const;
  int degree() const noexcept { return degree_; }

 private:
  struct Term {
    int a;
    int b;
    double c;
  };
  std::vector<Term> terms_;
  int degree_ = -1;
};

/// Polynomial in the velocities (xd, yd), homogeneous of a fixed degree, with
/// SpatialPoly coefficients. Monomial (p, q) means xd^p yd^q with p + q = degree.
class VelocityForm {
 public:
  explicit VelocityForm(int velocity_degree = 0);

  /// xd (p = 1, q = 0) or yd (p = 0, q = 1) with coefficient c.
  static VelocityForm velocity(int p, int q, const SpatialPoly& c);

  int velocity_degree() const noexcept { return degree_; }
  const SpatialPoly& coefficient(int p, int q) const;
  /// keyed by the yd exponent q
  const std::map<int, SpatialPoly>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(int p, int q, const SpatialPoly& c);

  VelocityForm& operator+=(const VelocityForm& o);
  VelocityForm& operator-=(const VelocityForm& o);
  VelocityForm& operator*=(const SpatialPoly& c);

  friend VelocityForm operator+(VelocityForm a, const VelocityForm& b) { return a += b; }
  friend VelocityForm operator-(VelocityForm a, const VelocityForm& b) { return a -= b; }
  friend VelocityForm operator*(VelocityForm a, const SpatialPoly& c) { return a *= c; }
  friend VelocityForm operator*(const SpatialPoly& c, VelocityForm a) { return a *= c; }
  friend VelocityForm operator*(const VelocityForm& a, const VelocityForm& b);
  friend bool operator==(const VelocityForm& a, const VelocityForm& b);

 private:
  void check(int p, int q) const;

  int degree_;
  std::map<int, SpatialPoly> terms_;
};

FieldScalar evaluate(const VelocityForm& f, const FieldScalar& x, const FieldScalar& y, const FieldScalar& xd,
                     const FieldScalar& yd);
double evaluate(const VelocityForm& f, double x, double y, double xd, double yd);

/// numerator / qd^k for the chamber polynomial qd of one case.
struct ReducedExpr {
  VelocityForm numerator;
  int qd_power = 0;
  SpatialPoly qd;
};

/// Same rational function: a.num * qd^kb == b.num * qd^ka (with equal qd).
bool equivalent(const ReducedExpr& a, const ReducedExpr& b);

double evaluate(const ReducedExpr& e, double x, double y, double xd, double yd);

/// d/ds of `expr` along a unit-speed profile curve whose planar curvature is
/// kd = curvature_factor * R, i.e. xdd = -kd * yd and ydd = kd * xd.
/// The default factor -1/3 gives the biharmonic-candidate rules
/// xdd = (R/3) yd, ydd = -(R/3) xd.
///
/// `r` must be a velocity-linear expression over qd^1 sharing expr's qd.
/// The quotient rule raises the qd power by one; the velocity degree rises by one.
ReducedExpr arc_derivative(const ReducedExpr& expr, const ReducedExpr& r,
                           const BigRational& curvature_factor = BigRational(-1, 3));

}  // namespace biharm
