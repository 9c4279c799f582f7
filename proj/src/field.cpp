#include "biharm/field.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  if (!o.a_.is_zero()) a_ += o.a_;
  if (!o.b_.is_zero()) b_ += o.b_;
  if (!o.c_.is_zero()) c_ += o.c_;
  if (!o.e_.is_zero()) e_ += o.e_;
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  if (!o.a_.is_zero()) a_ -= o.a_;
  if (!o.b_.is_zero()) b_ -= o.b_;
  if (!o.c_.is_zero()) c_ -= o.c_;
  if (!o.e_.is_zero()) e_ -= o.e_;
  return *this;
}

// Basis products: r2*r2 = 2, r3*r3 = 3, r6*r6 = 6, r2*r3 = r6, r2*r6 = 2 r3, r3*r6 = 3 r2.
void FieldScalar::add_product(const FieldScalar& u, const FieldScalar& v) {
  if (u.is_rational() && v.is_rational()) {
    a_.add_product(u.a_, v.a_);
    return;
  }
  static const BigRational two(2), three(3), six(6);
  const bool ur = u.is_rational();
  const bool vr = v.is_rational();
  if (ur || vr) {
    const FieldScalar& r = ur ? u : v;
    const FieldScalar& g = ur ? v : u;
    a_.add_product(r.a_, g.a_);
    b_.add_product(r.a_, g.b_);
    c_.add_product(r.a_, g.c_);
    e_.add_product(r.a_, g.e_);
    return;
  }
  FieldScalar t;
  t.a_.add_product(u.a_, v.a_);
  t.a_.add_product(two, u.b_ * v.b_);
  t.a_.add_product(three, u.c_ * v.c_);
  t.a_.add_product(six, u.e_ * v.e_);

  t.b_.add_product(u.a_, v.b_);
  t.b_.add_product(u.b_, v.a_);
  t.b_.add_product(three, u.c_ * v.e_ + u.e_ * v.c_);

  t.c_.add_product(u.a_, v.c_);
  t.c_.add_product(u.c_, v.a_);
  t.c_.add_product(two, u.b_ * v.e_ + u.e_ * v.b_);

  t.e_.add_product(u.a_, v.e_);
  t.e_.add_product(u.e_, v.a_);
  t.e_.add_product(u.b_, v.c_);
  t.e_.add_product(u.c_, v.b_);
  *this += t;
}

FieldScalar operator*(const FieldScalar& u, const FieldScalar& v) {
  FieldScalar r;
  r.add_product(u, v);
  return r;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  *this = *this * o;
  return *this;
}

FieldScalar FieldScalar::conjugate(bool flip_sqrt2, bool flip_sqrt3) const {
  FieldScalar r = *this;
  if (flip_sqrt2) r.b_ = -r.b_;
  if (flip_sqrt3) r.c_ = -r.c_;
  if (flip_sqrt2 != flip_sqrt3) r.e_ = -r.e_;
  return r;
}

BigRational FieldScalar::norm() const {
  const FieldScalar p = *this * conjugate(true, false) * conjugate(false, true) * conjugate(true, true);
  if (!p.is_rational()) throw PipelineError("field norm is not rational");
  return p.a_;
}

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(sqrt2, sqrt3)");
  if (is_rational()) return FieldScalar(BigRational(1) / a_);
  const FieldScalar others = conjugate(true, false) * conjugate(false, true) * conjugate(true, true);
  const FieldScalar n = *this * others;
  if (!n.is_rational()) throw PipelineError("field norm is not rational");
  const BigRational inv_n = BigRational(1) / n.a_;
  return {others.a_ * inv_n, others.b_ * inv_n, others.c_ * inv_n, others.e_ * inv_n};
}

std::string FieldScalar::to_string() const {
  return a_.to_string() + " + " + b_.to_string() + "*r2 + " + c_.to_string() + "*r3 + " + e_.to_string() + "*r6";
}

FieldScalar FieldScalar::parse(std::string_view text) {
  static constexpr std::array<std::string_view, 3> suffix = {"*r2", "*r3", "*r6"};
  if (text.find(" + ") == std::string_view::npos && text.find('r') == std::string_view::npos)
    return FieldScalar(BigRational::parse(text));
  std::array<BigRational, 4> part;
  std::string_view rest = text;
  for (int k = 0; k < 4; ++k) {
    std::string_view token;
    if (k < 3) {
      const auto pos = rest.find(" + ");
      if (pos == std::string_view::npos) throw ParseError("malformed field scalar '" + std::string(text) + "'", "");
      token = rest.substr(0, pos);
      rest.remove_prefix(pos + 3);
    } else {
      token = rest;
    }
    if (k > 0) {
      const auto& s = suffix[static_cast<std::size_t>(k - 1)];
      if (token.size() <= s.size() || token.substr(token.size() - s.size()) != s)
        throw ParseError("malformed field scalar '" + std::string(text) + "'", "");
      token.remove_suffix(s.size());
    }
    part[static_cast<std::size_t>(k)] = BigRational::parse(token);
  }
  return {part[0], part[1], part[2], part[3]};
}

FieldScalar field_arith(ArithOp op, const FieldScalar& u, const FieldScalar& v) {
  switch (op) {
    case ArithOp::add: return u + v;
    case ArithOp::sub: return u - v;
    case ArithOp::mul: return u * v;
    case ArithOp::neg: return -u;
    case ArithOp::inv: return u.inverse();
  }
  throw DomainError("unknown field operation");
}

bool admissible_d(int d) noexcept { return d == 1 || d == 2 || d == 3 || d == 4 || d == 6; }

TrigPair trig_pair(int d, int i) {
  if (!admissible_d(d)) throw UnsupportedCaseError("d = " + std::to_string(d) + " is not one of 1, 2, 3, 4, 6");
  if (i < 0 || i >= d) throw DomainError("wall index " + std::to_string(i) + " outside [0, d-1]");
  // Angle in units of pi/12 covers every admissible d.
  const int k = i * (12 / d);
  const FieldScalar half(BigRational(1, 2));
  const FieldScalar r2h(0, BigRational(1, 2), 0, 0);
  const FieldScalar r3h(0, 0, BigRational(1, 2), 0);
  switch (k) {
    case 0: return {0, 1};
    case 2: return {half, r3h};                              // pi/6
    case 3: return {r2h, r2h};                               // pi/4
    case 4: return {r3h, half};                              // pi/3
    case 6: return {1, 0};                                   // pi/2
    case 8: return {r3h, -half};                             // 2pi/3
    case 9: return {r2h, -r2h};                              // 3pi/4
    case 10: return {half, -r3h};                            // 5pi/6
    default: break;
  }
  throw PipelineError("no exact trig value tabulated for angle " + std::to_string(k) + "*pi/12");
}

HighFloat embed_real(const FieldScalar& u, long precision_bits) {
  if (u.is_zero()) return HighFloat(precision_bits);
  long headroom = 0;
  for (const BigRational* q : {&u.rational_part(), &u.sqrt2_part(), &u.sqrt3_part(), &u.sqrt6_part()}) {
    if (q->is_zero()) continue;
    const long bits = static_cast<long>(mpz_sizeinbase(q->raw().get_num_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(q->raw().get_den_mpz_t(), 2)) + 2;
    headroom = std::max(headroom, bits);
  }
  const long work = precision_bits + headroom + 8;
  HighFloat r(u.rational_part(), work);
  if (!u.sqrt2_part().is_zero()) r += HighFloat(u.sqrt2_part(), work) * HighFloat::sqrt_of(2, work);
  if (!u.sqrt3_part().is_zero()) r += HighFloat(u.sqrt3_part(), work) * HighFloat::sqrt_of(3, work);
  if (!u.sqrt6_part().is_zero()) r += HighFloat(u.sqrt6_part(), work) * HighFloat::sqrt_of(6, work);
  return r;
}

double to_double(const FieldScalar& u) { return embed_real(u, 64).to_double(); }

}  // namespace biharm
