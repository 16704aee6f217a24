#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "finkquad/rational.hpp"

namespace finkquad {

// Dense univariate polynomial with exact rational coefficients, ascending
// degree. Invariant: no trailing zero coefficients (the zero polynomial has an
// empty coefficient vector and degree -1).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> ascending_coeffs);

  static RationalPoly zero() { return RationalPoly(); }
  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(int degree, const Rational& coeff);
  // Comma-separated coefficients, ascending: "0,0,1" is t^2, entries may be
  // "num/den". Throws Errc::Parse.
  static RationalPoly from_string(std::string_view s);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of t^k; zero beyond the stored degree.
  const Rational& coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational eval(const Rational& t) const;  // Horner
  double eval_d(double t) const;

  RationalPoly derivative() const;
  // Antiderivative with value `at_zero` for the constant term.
  RationalPoly antiderivative(const Rational& at_zero = Rational(0)) const;
  // Signed definite integral over [a, b]; integrate(a,b) == -integrate(b,a).
  Rational integrate(const Rational& a, const Rational& b) const;
  // q(t) = p(a + b - t).
  RationalPoly reflect(const Rational& a, const Rational& b) const;
  // q(t) = p(t + s).
  RationalPoly shift(const Rational& s) const;

  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const Rational& c, const RationalPoly& p);

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) = default;

  // Round-trips through from_string; zero polynomial prints "0".
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

}  // namespace finkquad
