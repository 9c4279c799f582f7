#include "biharm/rational.hpp"

#include <cctype>

#include "biharm/errors.hpp"

namespace biharm {

BigRational::BigRational(long num, long den) : BigRational(mpz_class(num), mpz_class(den)) {}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'", "");
  if (num.front() == '+') num.remove_prefix(1);
  return BigRational(mpz_class(std::string(num)), mpz_class(std::string(den)));
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

void BigRational::add_product(const BigRational& a, const BigRational& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (is_zero()) {
    mpq_mul(v_.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return;
  }
  mpq_class t;
  mpq_mul(t.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
  v_ += t;
}

BigRational abs(const BigRational& q) { return q.sign() < 0 ? -q : q; }

}  // namespace biharm
