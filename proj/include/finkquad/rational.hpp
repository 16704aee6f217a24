#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "finkquad/error.hpp"

namespace finkquad {

// Exact rational scalar. Invariants (maintained by GMP canonicalization):
// lowest terms, denominator > 0, zero is 0/1. No fixed-width fallback; the
// integer parts grow as needed.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}          // NOLINT: implicit by design
  Rational(int n) : q_(n) {}           // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den);

  // Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double d);
  // Accepts "num", "num/den", optional leading '-'. Throws Errc::Parse.
  static Rational from_string(std::string_view s);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }
  // "num" for integers, else "num/den".
  std::string to_string() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& r) { return Rational(mpq_class(::abs(r.q_))); }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

// r^k for k >= 0 (0^0 = 1).
Rational pow_i(const Rational& r, int k);
// k! as an exact rational, k >= 0.
Rational factorial(int k);
// C(n, k) exact, 0 <= k <= n.
Rational binomial(int n, int k);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace finkquad
