#pragma once

#include <string>

#include <mpfr.h>

#include "biharm/rational.hpp"

namespace biharm {

/// Owning MPFR value. Binary operations round to the larger operand precision.
class HighFloat {
 public:
  explicit HighFloat(long precision_bits = 53);
  HighFloat(double value, long precision_bits);
  HighFloat(const BigRational& value, long precision_bits);
  HighFloat(const HighFloat& other);
  /// `other` rounded to `precision_bits`.
  HighFloat(const HighFloat& other, long precision_bits);
  HighFloat(HighFloat&& other) noexcept;
  HighFloat& operator=(const HighFloat& other);
  HighFloat& operator=(HighFloat&& other) noexcept;
  ~HighFloat();

  static HighFloat pi(long precision_bits);
  static HighFloat sqrt_of(unsigned long n, long precision_bits);

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  /// Binary exponent e with 2^(e-1) <= |v| < 2^e; very negative for zero.
  long exponent() const noexcept;
  std::string to_string(int digits = 20) const;

  HighFloat& operator+=(const HighFloat& o);
  HighFloat& operator-=(const HighFloat& o);
  HighFloat& operator*=(const HighFloat& o);
  HighFloat& operator/=(const HighFloat& o);

  friend HighFloat operator+(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator-(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator*(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator/(const HighFloat& a, const HighFloat& b);
  friend HighFloat operator-(const HighFloat& a);

  friend bool operator<(const HighFloat& a, const HighFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const HighFloat& a, const HighFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator==(const HighFloat& a, const HighFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend HighFloat abs(const HighFloat& a);
  friend HighFloat cos(const HighFloat& a);
  friend HighFloat sin(const HighFloat& a);
  friend HighFloat pow(const HighFloat& a, unsigned long e);

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace biharm
