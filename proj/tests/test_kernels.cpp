#include "doctest.h"

#include <cmath>
#include <random>

#include "finkquad/kernels.hpp"
#include "finkquad/oracle.hpp"

using finkquad::Error;
using finkquad::KernelVariant;
using finkquad::Rational;
using finkquad::RationalPoly;
namespace kernels = finkquad::kernels;

TEST_CASE("node domain checks") {
  CHECK_NOTHROW(kernels::check_node(Rational(0), Rational(0), Rational(1)));
  CHECK_NOTHROW(kernels::check_node(Rational(1, 2), Rational(0), Rational(1)));
  CHECK_THROWS_AS(kernels::check_node(Rational(3, 4), Rational(0), Rational(1)), Error);
  CHECK_THROWS_AS(kernels::check_node(Rational(-1), Rational(0), Rational(1)), Error);
  CHECK_THROWS_AS(kernels::check_node(Rational(0), Rational(1), Rational(0)), Error);
  // The two-piece kernel admits nodes across the whole interval.
  CHECK_NOTHROW(kernels::eval_p(Rational(1, 2), Rational(3, 4), Rational(0), Rational(1)));
  CHECK_THROWS_AS(kernels::eval_p(Rational(1, 2), Rational(2), Rational(0), Rational(1)),
                  Error);
}

TEST_CASE("three-piece kernel values and boundary conventions") {
  const Rational a(0), b(1), x(1, 4);
  CHECK(kernels::eval_S(Rational(0), x, a, b) == Rational(0));
  // t = x takes the first piece, t = a+b-x the third.
  CHECK(kernels::eval_S(x, x, a, b) == Rational(1, 4));
  CHECK(kernels::eval_S(Rational(3, 10), x, a, b) == Rational(-1, 5));
  CHECK(kernels::eval_S(Rational(3, 4), x, a, b) == Rational(-1, 4));
  CHECK(kernels::eval_S(Rational(1), x, a, b) == Rational(0));

  CHECK(kernels::eval_p(Rational(1, 4), Rational(1, 2), a, b) == Rational(1, 4));
  CHECK(kernels::eval_p(Rational(1, 2), Rational(1, 2), a, b) == Rational(1, 2));
  CHECK(kernels::eval_p(Rational(3, 5), Rational(1, 2), a, b) == Rational(-2, 5));
}

TEST_CASE("kernel variants coincide at order one") {
  const Rational a(0), b(1);
  for (int j = 0; j <= 16; ++j) {
    Rational t(j, 16);
    for (const Rational& x : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
      Rational s = kernels::eval_S(t, x, a, b);
      CHECK(kernels::eval_K(1, t, x, a, b, KernelVariant::Canonical) == s);
      CHECK(kernels::eval_K(1, t, x, a, b, KernelVariant::Printed) == s);
    }
  }
}

TEST_CASE("order-two kernel frozen values at t = 3/4, x = 0") {
  const Rational a(0), b(1), x(0), t(3, 4);
  CHECK(kernels::eval_K(2, t, x, a, b, KernelVariant::Canonical) == Rational(1, 16));
  CHECK(kernels::eval_K(2, t, x, a, b, KernelVariant::Printed) == Rational(-3, 16));
}

TEST_CASE("the two variants agree on the left half and split at the midpoint") {
  const Rational a(0), b(1);
  for (int n = 1; n <= 4; ++n) {
    for (const Rational& x : {Rational(0), Rational(1, 8), Rational(1, 2)}) {
      for (int j = 0; j <= 8; ++j) {
        Rational t(j, 16);  // t <= 1/2
        CHECK(kernels::eval_K(n, t, x, a, b, KernelVariant::Canonical) ==
              kernels::eval_K(n, t, x, a, b, KernelVariant::Printed));
      }
    }
  }
  // Right of the midpoint they differ for n >= 2 (unless the kernel is zero).
  CHECK(kernels::eval_K(2, Rational(3, 4), Rational(0), a, b, KernelVariant::Canonical) !=
        kernels::eval_K(2, Rational(3, 4), Rational(0), a, b, KernelVariant::Printed));
}

TEST_CASE("canonical kernel reflects with sign (-1)^n") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> den(1, 97);
  const Rational a(-1), b(2);
  for (int trial = 0; trial < 200; ++trial) {
    long dt = den(rng), dx = den(rng);
    std::uniform_int_distribution<long> numt(0, dt), numx(0, dx);
    Rational t = a + Rational(numt(rng), dt) * (b - a);
    Rational x = a + Rational(numx(rng), 2 * dx) * (b - a);  // left half
    for (int n = 1; n <= 5; ++n) {
      Rational lhs = kernels::eval_K(n, a + b - t, x, a, b, KernelVariant::Canonical);
      Rational rhs = kernels::eval_K(n, t, x, a, b, KernelVariant::Canonical);
      if (n % 2 == 1) rhs = -rhs;
      if (x == (a + b) / Rational(2) && t == (a + b) / Rational(2)) continue;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("piecewise form matches pointwise evaluation") {
  const Rational a(0), b(1);
  for (int n = 1; n <= 4; ++n) {
    for (const Rational& x : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
      for (KernelVariant v : {KernelVariant::Canonical, KernelVariant::Printed}) {
        auto pieces = kernels::kernel_pieces(n, x, a, b, v);
        REQUIRE(!pieces.empty());
        CHECK(pieces.front().lo == a);
        CHECK(pieces.back().hi == b);
        for (size_t i = 0; i + 1 < pieces.size(); ++i)
          CHECK(pieces[i].hi == pieces[i + 1].lo);
        for (const auto& piece : pieces) {
          CHECK(piece.lo < piece.hi);
          Rational mid_pt = (piece.lo + piece.hi) / Rational(2);
          CHECK(piece.poly.eval(mid_pt) == kernels::eval_K(n, mid_pt, x, a, b, v));
          Rational quarter_pt = (Rational(3) * piece.lo + piece.hi) / Rational(4);
          CHECK(piece.poly.eval(quarter_pt) == kernels::eval_K(n, quarter_pt, x, a, b, v));
        }
      }
      auto fp = kernels::fink_kernel_pieces(n, x, a, b);
      for (const auto& piece : fp) {
        Rational mid_pt = (piece.lo + piece.hi) / Rational(2);
        Rational expect = finkquad::pow_i(x - mid_pt, n - 1) *
                          kernels::eval_p(mid_pt, x, a, b);
        CHECK(piece.poly.eval(mid_pt) == expect);
      }
      auto sp = kernels::s_pieces(x, a, b);
      for (const auto& piece : sp) {
        Rational mid_pt = (piece.lo + piece.hi) / Rational(2);
        CHECK(piece.poly.eval(mid_pt) == kernels::eval_S(mid_pt, x, a, b));
      }
    }
  }
}

TEST_CASE("canonical kernel is continuous and vanishes at its anchors for n >= 2") {
  const Rational a(0), b(1);
  for (int n = 2; n <= 5; ++n) {
    for (const Rational& x : {Rational(0), Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
      auto pieces = kernels::kernel_pieces(n, x, a, b, KernelVariant::Canonical);
      for (size_t i = 0; i + 1 < pieces.size(); ++i)
        CHECK(pieces[i].poly.eval(pieces[i].hi) == pieces[i + 1].poly.eval(pieces[i + 1].lo));
      CHECK(pieces.front().poly.eval(a) == Rational(0));
      CHECK(pieces.back().poly.eval(b) == Rational(0));
      CHECK(kernels::eval_K(n, x, x, a, b, KernelVariant::Canonical) == Rational(0));
      CHECK(kernels::eval_K(n, a + b - x, x, a, b, KernelVariant::Canonical) == Rational(0));
    }
  }
}

TEST_CASE("squared-kernel integral splits evenly across the midpoint") {
  // |K(a+b-t)| == |K(t)| for the canonical variant, so the square integrates
  // to twice its left-half value.
  const Rational a(0), b(1), mid(1, 2);
  for (int n = 1; n <= 4; ++n) {
    for (const Rational& x : {Rational(0), Rational(1, 4), Rational(3, 8)}) {
      auto pieces = kernels::kernel_pieces(n, x, a, b, KernelVariant::Canonical);
      Rational total(0), left(0);
      for (const auto& piece : pieces) {
        RationalPoly sq = piece.poly * piece.poly;
        total += sq.integrate(piece.lo, piece.hi);
        if (piece.hi <= mid) left += sq.integrate(piece.lo, piece.hi);
        else if (piece.lo < mid) left += sq.integrate(piece.lo, mid);
      }
      CHECK(total == Rational(2) * left);
    }
  }
}

TEST_CASE("frozen sup of the order-two kernel at the quarter node") {
  double sup = finkquad::oracle::sup_on_interval(
      [](double t) {
        return std::fabs(finkquad::kernels::eval_K(2, t, 0.25, 0.0, 1.0,
                                                   KernelVariant::Canonical));
      },
      0.0, 1.0, kernels::kernel_breakpoints(0.25, 0.0, 1.0));
  CHECK(sup == doctest::Approx(1.0 / 64.0).epsilon(1e-10));
}

TEST_CASE("kernel breakpoints are the interior junctions") {
  auto bp = kernels::kernel_breakpoints(0.25, 0.0, 1.0);
  REQUIRE(bp.size() == 3);
  CHECK(bp[0] == 0.25);
  CHECK(bp[1] == 0.5);
  CHECK(bp[2] == 0.75);
  CHECK(kernels::kernel_breakpoints(0.0, 0.0, 1.0) == std::vector<double>{0.5});
  CHECK(kernels::kernel_breakpoints(0.5, 0.0, 1.0) == std::vector<double>{0.5});
}
