#include "biharm/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

// ---------------------------------------------------------------- SpatialPoly

SpatialPoly::SpatialPoly(const FieldScalar& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{0, 0}, c);
}

SpatialPoly SpatialPoly::monomial(const FieldScalar& c, int x_exp, int y_exp) {
  if (x_exp < 0 || y_exp < 0) throw DomainError("negative exponent");
  SpatialPoly p;
  if (!c.is_zero()) p.terms_.emplace(Exponent{x_exp, y_exp}, c);
  return p;
}

SpatialPoly SpatialPoly::linear(const FieldScalar& cx, const FieldScalar& cy) {
  SpatialPoly p = monomial(cx, 1, 0);
  p.add_term({0, 1}, cy);
  return p;
}

FieldScalar SpatialPoly::coefficient(int x_exp, int y_exp) const {
  const auto it = terms_.find(Exponent{x_exp, y_exp});
  return it == terms_.end() ? FieldScalar() : it->second;
}

void SpatialPoly::add_term(const Exponent& e, const FieldScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void SpatialPoly::add_scaled(const SpatialPoly& p, const FieldScalar& c, const Exponent& e) {
  if (c.is_zero()) return;
  auto hint = terms_.begin();
  for (const auto& [pe, pc] : p.terms_) {
    const Exponent key{pe.x + e.x, pe.y + e.y};
    hint = terms_.lower_bound(key);
    if (hint == terms_.end() || !(hint->first == key)) {
      terms_.emplace_hint(hint, key, pc * c);
      continue;
    }
    hint->second.add_product(pc, c);
    if (hint->second.is_zero()) terms_.erase(hint);
  }
}

SpatialPoly& SpatialPoly::operator+=(const SpatialPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SpatialPoly& SpatialPoly::operator-=(const SpatialPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SpatialPoly operator*(const SpatialPoly& a, const SpatialPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const SpatialPoly& outer = a.size() <= b.size() ? a : b;
  const SpatialPoly& inner = a.size() <= b.size() ? b : a;
  SpatialPoly r;
  for (const auto& [e, c] : outer.terms_) r.add_scaled(inner, c, e);
  return r;
}

SpatialPoly& SpatialPoly::operator*=(const SpatialPoly& o) {
  *this = *this * o;
  return *this;
}

SpatialPoly& SpatialPoly::operator*=(const FieldScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

SpatialPoly operator-(const SpatialPoly& a) {
  SpatialPoly r = a;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SpatialPoly SpatialPoly::swapped() const {
  SpatialPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.y, e.x}, c);
  return r;
}

SpatialPoly poly_arith(PolyArithOp op, const SpatialPoly& p, const SpatialPoly& q) {
  switch (op) {
    case PolyArithOp::add: return p + q;
    case PolyArithOp::sub: return p - q;
    case PolyArithOp::mul: return p * q;
    case PolyArithOp::scale: {
      const DegreeInfo info = homogeneous_degree(q);
      if (info.kind == Homogeneity::zero) return {};
      if (!info.is(0)) throw DomainError("scale expects a constant factor");
      return p * q.coefficient(0, 0);
    }
  }
  throw DomainError("unknown polynomial operation");
}

SpatialPoly scale(const SpatialPoly& p, const FieldScalar& c) { return p * c; }

SpatialPoly pow(const SpatialPoly& p, unsigned e) {
  SpatialPoly result(1);
  SpatialPoly base = p;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

SpatialPoly partial_derivative(const SpatialPoly& p, Var v) {
  SpatialPoly r;
  for (const auto& [e, c] : p.terms()) {
    const int k = v == Var::x ? e.x : e.y;
    if (k == 0) continue;
    const Exponent de = v == Var::x ? Exponent{e.x - 1, e.y} : Exponent{e.x, e.y - 1};
    r.add_term(de, c * FieldScalar(static_cast<long>(k)));
  }
  return r;
}

std::string DegreeInfo::to_string() const {
  switch (kind) {
    case Homogeneity::zero: return "zero";
    case Homogeneity::not_homogeneous: return "not homogeneous";
    case Homogeneity::homogeneous: return std::to_string(degree);
  }
  return "?";
}

DegreeInfo homogeneous_degree(const SpatialPoly& p) {
  if (p.is_zero()) return {Homogeneity::zero, -1};
  const int d = p.terms().begin()->first.total();
  // Canonical order is graded, so the last term has the lowest total degree.
  if (p.terms().rbegin()->first.total() != d) return {Homogeneity::not_homogeneous, -1};
  return {Homogeneity::homogeneous, d};
}

std::optional<SpatialPoly> try_divide_exact(const SpatialPoly& num, const SpatialPoly& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  const auto& [lead_e, lead_c] = *den.terms().begin();
  const FieldScalar lead_inv = lead_c.inverse();
  SpatialPoly rem = num;
  SpatialPoly quot;
  while (!rem.is_zero()) {
    const auto& [e, c] = *rem.terms().begin();
    if (e.x < lead_e.x || e.y < lead_e.y) return std::nullopt;
    const Exponent qe{e.x - lead_e.x, e.y - lead_e.y};
    const FieldScalar qc = c * lead_inv;
    quot.add_term(qe, qc);
    rem.add_scaled(den, -qc, qe);
  }
  return quot;
}

SpatialPoly divide_exact(const SpatialPoly& num, const SpatialPoly& den) {
  auto q = try_divide_exact(num, den);
  if (!q) throw DomainError("polynomial division leaves a remainder");
  return std::move(*q);
}

FieldScalar evaluate(const SpatialPoly& p, const FieldScalar& x, const FieldScalar& y) {
  if (p.is_zero()) return {};
  const int deg = p.total_degree();
  std::vector<FieldScalar> xp(static_cast<std::size_t>(deg) + 1, FieldScalar(1));
  std::vector<FieldScalar> yp(static_cast<std::size_t>(deg) + 1, FieldScalar(1));
  for (std::size_t k = 1; k < xp.size(); ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  FieldScalar sum;
  for (const auto& [e, c] : p.terms())
    sum.add_product(c, xp[static_cast<std::size_t>(e.x)] * yp[static_cast<std::size_t>(e.y)]);
  return sum;
}

double evaluate(const SpatialPoly& p, double x, double y) { return FloatPoly(p)(x, y); }

HighFloat evaluate(const SpatialPoly& p, const HighFloat& x, const HighFloat& y, long precision_bits) {
  HighFloat sum(precision_bits);
  if (p.is_zero()) return sum;
  const auto deg = static_cast<std::size_t>(p.total_degree());
  std::vector<HighFloat> xp(deg + 1, HighFloat(1.0, precision_bits));
  std::vector<HighFloat> yp(deg + 1, HighFloat(1.0, precision_bits));
  for (std::size_t k = 1; k <= deg; ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  for (const auto& [e, c] : p.terms()) {
    HighFloat t = embed_real(c, precision_bits);
    t *= xp[static_cast<std::size_t>(e.x)];
    t *= yp[static_cast<std::size_t>(e.y)];
    sum += t;
  }
  return sum;
}

double max_abs_coefficient(const SpatialPoly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
  return m;
}

std::string to_string(const SpatialPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (e.x > 0) out += "*x^" + std::to_string(e.x);
    if (e.y > 0) out += "*y^" + std::to_string(e.y);
  }
  return out;
}

SpatialPoly parse_spatial_poly(std::string_view text) {
  if (text == "0") return {};
  SpatialPoly p;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(why, "offset " + std::to_string(pos));
  };
  auto read_int = [&]() {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw fail("expected exponent");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  while (true) {
    if (pos >= text.size() || text[pos] != '(') throw fail("expected '('");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw fail("unbalanced '('");
    const FieldScalar c = FieldScalar::parse(text.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    Exponent e;
    if (text.substr(pos, 3) == "*x^") {
      pos += 3;
      e.x = read_int();
    }
    if (text.substr(pos, 3) == "*y^") {
      pos += 3;
      e.y = read_int();
    }
    if (!p.coefficient(e.x, e.y).is_zero()) throw fail("repeated monomial");
    p.add_term(e, c);
    if (pos == text.size()) break;
    if (text.substr(pos, 3) != " + ") throw fail("expected ' + '");
    pos += 3;
  }
  return p;
}

// ------------------------------------------------------------------ FloatPoly

FloatPoly::FloatPoly(const SpatialPoly& p) : degree_(p.total_degree()) {
  terms_.reserve(p.size());
  for (const auto& [e, c] : p.terms()) terms_.push_back({e.x, e.y, to_double(c)});
}

namespace {

template <class F>
double float_sum(const std::vector<F>& terms, int degree, double x, double y, bool absolute) {
  if (terms.empty()) return 0.0;
  constexpr int kStack = 64;
  double xs[kStack];
  double ys[kStack];
  std::vector<double> xh;
  std::vector<double> yh;
  double* xp = xs;
  double* yp = ys;
  if (degree + 1 > kStack) {
    xh.resize(static_cast<std::size_t>(degree) + 1);
    yh.resize(static_cast<std::size_t>(degree) + 1);
    xp = xh.data();
    yp = yh.data();
  }
  if (absolute) {
    x = std::abs(x);
    y = std::abs(y);
  }
  xp[0] = yp[0] = 1.0;
  for (int k = 1; k <= degree; ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  double s = 0.0;
  for (const auto& t : terms) s += (absolute ? std::abs(t.c) : t.c) * xp[t.a] * yp[t.b];
  return s;
}

}  // namespace

double FloatPoly::operator()(double x, double y) const { return float_sum(terms_, degree_, x, y, false); }

double FloatPoly::magnitude(double x, double y) const { return float_sum(terms_, degree_, x, y, true); }

// --------------------------------------------------------------- VelocityForm

VelocityForm::VelocityForm(int velocity_degree) : degree_(velocity_degree) {
  if (velocity_degree < 0) throw DomainError("negative velocity degree");
}

VelocityForm VelocityForm::velocity(int p, int q, const SpatialPoly& c) {
  VelocityForm f(p + q);
  f.add(p, q, c);
  return f;
}

void VelocityForm::check(int p, int q) const {
  if (p < 0 || q < 0 || p + q != degree_)
    throw DomainError("velocity monomial (" + std::to_string(p) + "," + std::to_string(q) +
                      ") does not have degree " + std::to_string(degree_));
}

const SpatialPoly& VelocityForm::coefficient(int p, int q) const {
  static const SpatialPoly zero;
  check(p, q);
  const auto it = terms_.find(q);
  return it == terms_.end() ? zero : it->second;
}

void VelocityForm::add(int p, int q, const SpatialPoly& c) {
  check(p, q);
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(q, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

VelocityForm& VelocityForm::operator+=(const VelocityForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw DomainError("adding velocity forms of different degree");
  for (const auto& [q, c] : o.terms_) add(degree_ - q, q, c);
  return *this;
}

VelocityForm& VelocityForm::operator-=(const VelocityForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw DomainError("subtracting velocity forms of different degree");
  for (const auto& [q, c] : o.terms_) add(degree_ - q, q, -c);
  return *this;
}

VelocityForm& VelocityForm::operator*=(const SpatialPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [q, v] : terms_) v *= c;
  return *this;
}

VelocityForm operator*(const VelocityForm& a, const VelocityForm& b) {
  VelocityForm r(a.degree_ + b.degree_);
  for (const auto& [qa, ca] : a.terms_)
    for (const auto& [qb, cb] : b.terms_) {
      const int q = qa + qb;
      r.add(r.degree_ - q, q, ca * cb);
    }
  return r;
}

bool operator==(const VelocityForm& a, const VelocityForm& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

FieldScalar evaluate(const VelocityForm& f, const FieldScalar& x, const FieldScalar& y, const FieldScalar& xd,
                     const FieldScalar& yd) {
  FieldScalar sum;
  const int n = f.velocity_degree();
  for (const auto& [q, c] : f.terms()) {
    FieldScalar mono(1);
    for (int k = 0; k < n - q; ++k) mono *= xd;
    for (int k = 0; k < q; ++k) mono *= yd;
    sum.add_product(evaluate(c, x, y), mono);
  }
  return sum;
}

double evaluate(const VelocityForm& f, double x, double y, double xd, double yd) {
  double sum = 0.0;
  const int n = f.velocity_degree();
  for (const auto& [q, c] : f.terms())
    sum += evaluate(c, x, y) * std::pow(xd, n - q) * std::pow(yd, q);
  return sum;
}

// ---------------------------------------------------------------- ReducedExpr

bool equivalent(const ReducedExpr& a, const ReducedExpr& b) {
  if (!(a.qd == b.qd)) throw DomainError("comparing expressions with different chamber polynomials");
  if (a.numerator.is_zero() || b.numerator.is_zero()) return a.numerator.is_zero() && b.numerator.is_zero();
  const int shift = std::max(a.qd_power, b.qd_power);
  VelocityForm lhs = a.numerator * pow(a.qd, static_cast<unsigned>(shift - a.qd_power));
  VelocityForm rhs = b.numerator * pow(b.qd, static_cast<unsigned>(shift - b.qd_power));
  return lhs == rhs;
}

double evaluate(const ReducedExpr& e, double x, double y, double xd, double yd) {
  return evaluate(e.numerator, x, y, xd, yd) / std::pow(evaluate(e.qd, x, y), e.qd_power);
}

ReducedExpr arc_derivative(const ReducedExpr& expr, const ReducedExpr& r, const BigRational& curvature_factor) {
  if (!(expr.qd == r.qd)) throw DomainError("arc_derivative: expression and R belong to different cases");
  if (r.qd_power != 1 || (r.numerator.velocity_degree() != 1 && !r.numerator.is_zero()))
    throw DomainError("arc_derivative: R must be velocity-linear over qd");
  const SpatialPoly& q = expr.qd;
  const VelocityForm& num = expr.numerator;
  const int n = num.velocity_degree();
  const int k = expr.qd_power;

  // Spatial transport: sum (dP/dx xd + dP/dy yd) xd^p yd^j.
  VelocityForm transport(n + 1);
  // Velocity rotation with xdd = -kd yd, ydd = kd xd and kd = factor * R:
  // d/ds (xd^p yd^j) = kd (j xd^(p+1) yd^(j-1) - p xd^(p-1) yd^(j+1)).
  VelocityForm rotation(n);
  for (const auto& [j, c] : num.terms()) {
    const int p = n - j;
    transport.add(p + 1, j, partial_derivative(c, Var::x));
    transport.add(p, j + 1, partial_derivative(c, Var::y));
    if (j > 0) rotation.add(p + 1, j - 1, c * FieldScalar(static_cast<long>(j)));
    if (p > 0) rotation.add(p - 1, j + 1, c * FieldScalar(static_cast<long>(-p)));
  }
  const VelocityForm q_dot = VelocityForm::velocity(1, 0, partial_derivative(q, Var::x)) +
                             VelocityForm::velocity(0, 1, partial_derivative(q, Var::y));

  ReducedExpr out{VelocityForm(n + 1), k + 1, q};
  out.numerator += transport * q;
  if (k != 0) out.numerator -= (q_dot * num) * SpatialPoly(FieldScalar(static_cast<long>(k)));
  if (!rotation.is_zero() && !r.numerator.is_zero())
    out.numerator += (r.numerator * rotation) * SpatialPoly(FieldScalar(curvature_factor));
  return out;
}

}  // namespace biharm
