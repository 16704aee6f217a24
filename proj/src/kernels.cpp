#include "finkquad/kernels.hpp"

#include <algorithm>

namespace finkquad {
namespace kernels {

namespace {

// (c - t)^k as a polynomial in t.
RationalPoly power_of_linear(const Rational& c, int k) {
  RationalPoly lin(std::vector<Rational>{c, Rational(-1)});
  RationalPoly acc = RationalPoly::constant(Rational(1));
  for (int i = 0; i < k; ++i) acc = acc * lin;
  return acc;
}

void push_piece(std::vector<KernelPiece>& out, const Rational& lo, const Rational& hi,
                RationalPoly poly) {
  if (lo < hi) out.push_back({lo, hi, std::move(poly)});
}

}  // namespace

std::vector<KernelPiece> s_pieces(const Rational& x, const Rational& a, const Rational& b) {
  check_node(x, a, b);
  Rational mid = (a + b) / Rational(2);
  Rational refl = a + b - x;
  std::vector<KernelPiece> out;
  RationalPoly t_minus = RationalPoly(std::vector<Rational>{Rational(0), Rational(1)});
  push_piece(out, a, x, t_minus - RationalPoly::constant(a));
  push_piece(out, x, refl, t_minus - RationalPoly::constant(mid));
  push_piece(out, refl, b, t_minus - RationalPoly::constant(b));
  return out;
}

std::vector<KernelPiece> kernel_pieces(int n, const Rational& x, const Rational& a,
                                       const Rational& b, KernelVariant variant) {
  if (n < 1) throw Error(Errc::Domain, "kernel order n must be >= 1");
  check_node(x, a, b);
  Rational mid = (a + b) / Rational(2);
  Rational refl = a + b - x;
  RationalPoly left_factor = power_of_linear(x, n - 1);
  RationalPoly right_factor = variant == KernelVariant::Canonical
                                  ? power_of_linear(refl, n - 1)
                                  : left_factor;
  RationalPoly t_minus = RationalPoly(std::vector<Rational>{Rational(0), Rational(1)});
  RationalPoly s_left_piece = t_minus - RationalPoly::constant(a);
  RationalPoly s_mid_piece = t_minus - RationalPoly::constant(mid);
  RationalPoly s_right_piece = t_minus - RationalPoly::constant(b);

  std::vector<KernelPiece> out;
  push_piece(out, a, x, left_factor * s_left_piece);
  // The factor switches at the midpoint, inside the middle S piece.
  push_piece(out, x, mid, left_factor * s_mid_piece);
  push_piece(out, mid, refl, right_factor * s_mid_piece);
  push_piece(out, refl, b, right_factor * s_right_piece);
  return out;
}

std::vector<KernelPiece> fink_kernel_pieces(int n, const Rational& x, const Rational& a,
                                            const Rational& b) {
  if (n < 1) throw Error(Errc::Domain, "kernel order n must be >= 1");
  if (!(a < b)) throw Error(Errc::Domain, "empty interval: need a < b");
  if (x < a || x > b) throw Error(Errc::NodeRange, "node x must lie in [a, b]");
  RationalPoly factor = power_of_linear(x, n - 1);
  RationalPoly t_minus = RationalPoly(std::vector<Rational>{Rational(0), Rational(1)});
  std::vector<KernelPiece> out;
  push_piece(out, a, x, factor * (t_minus - RationalPoly::constant(a)));
  push_piece(out, x, b, factor * (t_minus - RationalPoly::constant(b)));
  return out;
}

std::vector<double> kernel_breakpoints(double x, double a, double b) {
  std::vector<double> pts = {x, 0.5 * (a + b), a + b - x};
  std::vector<double> out;
  for (double p : pts)
    if (p > a && p < b) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace kernels
}  // namespace finkquad
