#include "finkquad/rational.hpp"

#include <cmath>
#include <ostream>

namespace finkquad {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::Parse, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(Errc::Parse, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw Error(Errc::Parse, "non-finite value has no rational form");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), d);
  return Rational(q);
}

Rational Rational::from_string(std::string_view s) {
  if (s.empty()) throw Error(Errc::Parse, "empty rational literal");
  mpq_class q;
  // mpq_set_str accepts "num" and "num/den" in base 10.
  if (mpq_set_str(q.get_mpq_t(), std::string(s).c_str(), 10) != 0)
    throw Error(Errc::Parse, "bad rational literal '" + std::string(s) + "'");
  if (q.get_den() == 0)
    throw Error(Errc::Parse, "zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::Domain, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational pow_i(const Rational& r, int k) {
  if (k < 0) throw Error(Errc::Domain, "negative exponent in pow_i");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(num, den);
}

Rational factorial(int k) {
  if (k < 0) throw Error(Errc::Domain, "factorial of negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f, mpz_class(1));
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) throw Error(Errc::Domain, "binomial index out of range");
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(c, mpz_class(1));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace finkquad
