#include "biharm/highprec.hpp"

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>

namespace biharm {

namespace {

mpfr_prec_t clamp_prec(long bits) { return std::max<long>(bits, MPFR_PREC_MIN); }

HighFloat with_prec_of(const HighFloat& a, const HighFloat& b) {
  return HighFloat(std::max(a.precision(), b.precision()));
}

}  // namespace

HighFloat::HighFloat(long precision_bits) {
  mpfr_init2(v_, clamp_prec(precision_bits));
  mpfr_set_zero(v_, 1);
}

HighFloat::HighFloat(double value, long precision_bits) : HighFloat(precision_bits) {
  mpfr_set_d(v_, value, MPFR_RNDN);
}

HighFloat::HighFloat(const BigRational& value, long precision_bits) : HighFloat(precision_bits) {
  mpfr_set_q(v_, value.raw().get_mpq_t(), MPFR_RNDN);
}

HighFloat::HighFloat(const HighFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HighFloat::HighFloat(const HighFloat& other, long precision_bits) : HighFloat(precision_bits) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HighFloat::HighFloat(HighFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

HighFloat& HighFloat::operator=(const HighFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

HighFloat& HighFloat::operator=(HighFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

HighFloat::~HighFloat() { mpfr_clear(v_); }

HighFloat HighFloat::pi(long precision_bits) {
  HighFloat r(precision_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

HighFloat HighFloat::sqrt_of(unsigned long n, long precision_bits) {
  HighFloat r(precision_bits);
  mpfr_sqrt_ui(r.v_, n, MPFR_RNDN);
  return r;
}

long HighFloat::exponent() const noexcept {
  if (mpfr_zero_p(v_) || !mpfr_number_p(v_)) return LONG_MIN / 2;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string HighFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

HighFloat& HighFloat::operator+=(const HighFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighFloat& HighFloat::operator-=(const HighFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighFloat& HighFloat::operator*=(const HighFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighFloat& HighFloat::operator/=(const HighFloat& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighFloat operator+(const HighFloat& a, const HighFloat& b) {
  HighFloat r = with_prec_of(a, b);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator-(const HighFloat& a, const HighFloat& b) {
  HighFloat r = with_prec_of(a, b);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator*(const HighFloat& a, const HighFloat& b) {
  HighFloat r = with_prec_of(a, b);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator/(const HighFloat& a, const HighFloat& b) {
  HighFloat r = with_prec_of(a, b);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HighFloat operator-(const HighFloat& a) {
  HighFloat r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HighFloat abs(const HighFloat& a) {
  HighFloat r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HighFloat cos(const HighFloat& a) {
  HighFloat r(a.precision());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HighFloat sin(const HighFloat& a) {
  HighFloat r(a.precision());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HighFloat pow(const HighFloat& a, unsigned long e) {
  HighFloat r(a.precision());
  mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

}  // namespace biharm
