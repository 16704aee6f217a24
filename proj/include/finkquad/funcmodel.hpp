#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "finkquad/poly.hpp"

namespace finkquad {

// Derivative tower of a function at one point: values[j] = f^(j)(point),
// j = 0..m.
struct Jet {
  double point = 0.0;
  std::vector<double> values;
};

// Closed catalog of smooth test functions with derivative towers of every
// order up to max_order. Instances are immutable and cheap to copy.
//
// Catalog:   poly   p(t) with exact rational coefficients
//            exp    scale * e^(rate*t)
//            sin    scale * sin(freq*t + phase)
//            cos    scale * cos(freq*t + phase)
//            recip  scale / (t + shift), pole at t = -shift
//
// The scale factor exists so that reflection t -> a+b-t stays inside the
// catalog for every kind (e.g. e^(a+b-t) = e^(a+b) * e^(-t)).
class SmoothFn {
 public:
  enum class Kind { Poly, Exp, Sin, Cos, Recip };

  static constexpr int kDefaultMaxOrder = 12;

  static SmoothFn poly(RationalPoly p, int max_order = kDefaultMaxOrder);
  static SmoothFn exp(double rate, double scale = 1.0, int max_order = kDefaultMaxOrder);
  static SmoothFn sin(double freq, double phase = 0.0, double scale = 1.0,
                      int max_order = kDefaultMaxOrder);
  static SmoothFn cos(double freq, double phase = 0.0, double scale = 1.0,
                      int max_order = kDefaultMaxOrder);
  static SmoothFn recip(double shift, double scale = 1.0, int max_order = kDefaultMaxOrder);

  // Textual forms: "poly:<c0,c1,...>", "exp:<rate>[:<scale>]",
  // "sin:<freq>:<phase>[:<scale>]", "cos:<freq>:<phase>[:<scale>]",
  // "recip:<shift>[:<scale>]". Poly coefficients may be rationals.
  static SmoothFn parse(std::string_view spec);
  std::string spec_string() const;

  Kind kind() const { return kind_; }
  int max_order() const { return max_order_; }
  bool is_poly() const { return kind_ == Kind::Poly; }

  double value(double t) const { return derivative(0, t); }
  // f^(order)(t). Throws OrderExceeded beyond max_order + 1, Domain at a pole.
  double derivative(int order, double t) const;
  // Derivative tower f, f', ..., f^(m) at t. Same error conditions.
  Jet jet(double t, int m) const;

  // Exact paths, Poly only (Domain otherwise).
  const RationalPoly& poly_coeffs() const;
  const RationalPoly& derived_poly(int order) const;  // exact f^(order)
  Rational derivative_exact(int order, const Rational& t) const;
  Rational integral_exact(const Rational& a, const Rational& b) const;

  // Closed-form definite integral over [a, b] (all kinds).
  double integral(double a, double b) const;

  // g with g(t) = f(a+b-t); derivative towers satisfy
  // g^(j)(t) = (-1)^j f^(j)(a+b-t). Exact for Poly (endpoints converted to
  // dyadic rationals first).
  SmoothFn reflected(double a, double b) const;
  SmoothFn reflected(const Rational& a, const Rational& b) const;

 private:
  SmoothFn() = default;

  Kind kind_ = Kind::Poly;
  int max_order_ = kDefaultMaxOrder;
  double rate_ = 0.0;   // exp rate / trig freq / recip shift
  double phase_ = 0.0;  // trig only
  double scale_ = 1.0;
  // Poly: base polynomial plus precomputed derivatives up to max_order + 1.
  std::shared_ptr<const std::vector<RationalPoly>> derivs_;
};

}  // namespace finkquad
