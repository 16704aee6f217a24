#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "finkquad/poly.hpp"

namespace finkquad {

// Harmonic polynomial sequence P_0, ..., P_m: P_0 = 1 and P_k' = P_{k-1}, so
// deg P_k = k exactly. The integration constants are the sequence's free
// parameters; the power family P_k(t) = (t-y)^k / k! is one choice.
class HarmonicSeq {
 public:
  explicit HarmonicSeq(std::vector<RationalPoly> polys);

  // P_k(t) = (t - center)^k / k!, k = 0..m.
  static HarmonicSeq power_sequence(const Rational& center, int m);

  // Sequence spec strings: "power:<center>" (center rational; built up to
  // order `order_needed`) or "seq:<poly;poly;...>" with each polynomial in
  // comma form. Throws Errc::Parse / Errc::Domain on invalid sequences.
  static HarmonicSeq parse(std::string_view spec, int order_needed);
  std::string spec_string() const;

  int max_order() const { return static_cast<int>(polys_.size()) - 1; }
  const RationalPoly& at(int k) const;

  // P_0 == 1, P_k' == P_{k-1}, deg P_k == k, for every k up to max_order.
  bool is_valid() const;
  void require_valid() const;  // throws Errc::Domain with the failing index

  // Midpoint symmetry on [a,b]: P_k(t) == (-1)^k P_k(a+b-t) for all k.
  bool is_symmetric(const Rational& a, const Rational& b) const;

  // Extends to order `to` by antiderivatives. When the sequence is symmetric
  // on [a,b] the new constants keep it symmetric (each new P_k vanishes at the
  // midpoint); otherwise the integration constant is zero.
  HarmonicSeq extended(int to, const Rational& a = Rational(0),
                       const Rational& b = Rational(1)) const;

  // ||P_k||_q on [a,b]: oracle integration for finite q, grid+refine sup for
  // q = inf.
  double norm(int k, double q, double a, double b) const;

 private:
  std::vector<RationalPoly> polys_;
};

}  // namespace finkquad
