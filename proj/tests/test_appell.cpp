#include "doctest.h"

#include <cmath>

#include "finkquad/appell.hpp"

using finkquad::Error;
using finkquad::HarmonicSeq;
using finkquad::Rational;
using finkquad::RationalPoly;

TEST_CASE("power sequence satisfies the derivative chain") {
  HarmonicSeq seq = HarmonicSeq::power_sequence(Rational(1, 3), 5);
  CHECK(seq.max_order() == 5);
  CHECK(seq.is_valid());
  CHECK(seq.at(0) == RationalPoly::constant(Rational(1)));
  for (int k = 1; k <= 5; ++k) {
    CHECK(seq.at(k).degree() == k);
    CHECK(seq.at(k).derivative() == seq.at(k - 1));
    // P_k vanishes at the center.
    CHECK(seq.at(k).eval(Rational(1, 3)) == Rational(0));
  }
  // P_2(t) = (t - 1/3)^2 / 2.
  CHECK(seq.at(2).eval(Rational(1)) == Rational(2, 9));
  CHECK_THROWS_AS(seq.at(6), Error);
  CHECK_THROWS_AS(seq.at(-1), Error);
}

TEST_CASE("invalid chains are detected with the failing index") {
  // P_1' = 2 != P_0.
  HarmonicSeq bad({RationalPoly::constant(Rational(1)),
                   RationalPoly::from_string("0,2")});
  CHECK(!bad.is_valid());
  CHECK_THROWS_AS(bad.require_valid(), Error);
  // P_0 must be the constant 1.
  HarmonicSeq bad0({RationalPoly::constant(Rational(2))});
  CHECK(!bad0.is_valid());
  // Degree must grow by exactly one (constant slot shared is fine, but a
  // skipped degree is not expressible: P_k' = P_{k-1} forces deg P_k = k).
  CHECK(HarmonicSeq::power_sequence(Rational(0), 0).is_valid());
}

TEST_CASE("sequence specs parse and round-trip") {
  HarmonicSeq p = HarmonicSeq::parse("power:1/2", 3);
  CHECK(p.max_order() >= 3);
  CHECK(p.at(1) == RationalPoly::from_string("-1/2,1"));
  CHECK(p.spec_string() == HarmonicSeq::parse(p.spec_string(), 3).spec_string());

  HarmonicSeq s = HarmonicSeq::parse("seq:1;0,1", 1);
  CHECK(s.max_order() == 1);
  CHECK(s.is_valid());

  CHECK_THROWS_AS(HarmonicSeq::parse("seq:1;0,1", 2), Error);   // too short
  CHECK_THROWS_AS(HarmonicSeq::parse("seq:1;1,2", 1), Error);   // broken chain
  CHECK_THROWS_AS(HarmonicSeq::parse("power:", 1), Error);
  CHECK_THROWS_AS(HarmonicSeq::parse("bogus:1", 1), Error);
}

TEST_CASE("midpoint symmetry holds exactly for the centered power family") {
  const Rational a(0), b(1);
  CHECK(HarmonicSeq::power_sequence(Rational(1, 2), 4).is_symmetric(a, b));
  CHECK(!HarmonicSeq::power_sequence(Rational(0), 4).is_symmetric(a, b));
  // Symmetry is relative to the interval midpoint, not a fixed center.
  CHECK(!HarmonicSeq::power_sequence(Rational(1, 2), 4).is_symmetric(Rational(0), Rational(2)));
  CHECK(HarmonicSeq::power_sequence(Rational(1, 2), 4).is_symmetric(Rational(-1), Rational(2)));
  CHECK(HarmonicSeq::power_sequence(Rational(1, 2), 3)
            .is_symmetric(Rational(0), Rational(1)));
}

TEST_CASE("extension keeps the chain and the centered family") {
  const Rational a(0), b(1);
  HarmonicSeq base = HarmonicSeq::power_sequence(Rational(1, 2), 2);
  HarmonicSeq ext = base.extended(5, a, b);
  CHECK(ext.max_order() == 5);
  CHECK(ext.is_valid());
  CHECK(ext.is_symmetric(a, b));
  // The symmetric extension of the centered power family is itself.
  HarmonicSeq full = HarmonicSeq::power_sequence(Rational(1, 2), 5);
  for (int k = 0; k <= 5; ++k) CHECK(ext.at(k) == full.at(k));

  HarmonicSeq off = HarmonicSeq::power_sequence(Rational(0), 2).extended(4, a, b);
  CHECK(off.is_valid());
  CHECK(off.max_order() == 4);
}

TEST_CASE("norms match hand-computed values for P_1 = t") {
  HarmonicSeq seq = HarmonicSeq::power_sequence(Rational(0), 2);
  CHECK(seq.norm(1, 1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(seq.norm(1, 2.0, 0.0, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(seq.norm(1, std::numeric_limits<double>::infinity(), 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // P_2 = t^2/2: sup on [0,1] is 1/2.
  CHECK(seq.norm(2, std::numeric_limits<double>::infinity(), 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-10));
}
