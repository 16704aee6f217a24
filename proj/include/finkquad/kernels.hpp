#pragma once

#include <vector>

#include "finkquad/error.hpp"
#include "finkquad/poly.hpp"
#include "finkquad/rational.hpp"

namespace finkquad {

// The degree-(n-1) remainder kernel comes in two conventions that agree for
// n = 1 and differ for n >= 2:
//   Printed    (x-t)^(n-1) * S(t,x) across all of [a,b]
//   Canonical  (x-t)^(n-1) * S(t,x)      for t <= (a+b)/2
//              (a+b-x-t)^(n-1) * S(t,x)  for t >  (a+b)/2
// Canonical is the variant that closes the exact two-point identity (it is
// what the iterated-integral form collapses to); Printed is kept for
// regression pins and audit comparisons. The default everywhere is Canonical.
enum class KernelVariant { Canonical, Printed };

namespace kernels {

// x must lie in [a, (a+b)/2]; the rules' symmetric node pair is {x, a+b-x}.
template <class T>
void check_node(const T& x, const T& a, const T& b) {
  if (!(a < b)) throw Error(Errc::Domain, "empty interval: need a < b");
  T mid = (a + b) / T(2);
  if (x < a || x > mid)
    throw Error(Errc::NodeRange, "node x must lie in [a, (a+b)/2]");
}

// Three-piece kernel: t-a on [a,x], t-(a+b)/2 on (x, a+b-x), t-b on [a+b-x,b].
// Boundary convention: t = x takes the first piece, t = a+b-x the third.
template <class T>
T eval_S(const T& t, const T& x, const T& a, const T& b) {
  check_node(x, a, b);
  if (t <= x) return t - a;
  T refl = a + b - x;
  if (t < refl) return t - (a + b) / T(2);
  return t - b;
}

// Two-piece kernel: t-a on [a,x], t-b on (x,b]. The node here may be anywhere
// in [a,b]. Boundary convention: t = x takes the first piece.
template <class T>
T eval_p(const T& t, const T& x, const T& a, const T& b) {
  if (!(a < b)) throw Error(Errc::Domain, "empty interval: need a < b");
  if (x < a || x > b) throw Error(Errc::NodeRange, "node x must lie in [a, b]");
  return t <= x ? t - a : t - b;
}

template <class T>
T pow_n(const T& base, int k) {
  T acc(1);
  for (int i = 0; i < k; ++i) acc = acc * base;
  return acc;  // k = 0 gives 1 even at base 0
}

template <class T>
T eval_K(int n, const T& t, const T& x, const T& a, const T& b, KernelVariant variant) {
  if (n < 1) throw Error(Errc::Domain, "kernel order n must be >= 1");
  T s = eval_S(t, x, a, b);
  if (variant == KernelVariant::Printed) return pow_n(x - t, n - 1) * s;
  T mid = (a + b) / T(2);
  if (t <= mid) return pow_n(x - t, n - 1) * s;
  return pow_n(a + b - x - t, n - 1) * s;
}

// One polynomial piece of a kernel, valid on [lo, hi].
struct KernelPiece {
  Rational lo, hi;
  RationalPoly poly;
};

// Piecewise-polynomial form of (x-t)^(n-1)-weighted S (variant selecting the
// right-half factor) for exact integration. Degenerate pieces (lo == hi) are
// dropped; the middle S piece is split at (a+b)/2 where the Canonical factor
// switches.
std::vector<KernelPiece> kernel_pieces(int n, const Rational& x, const Rational& a,
                                       const Rational& b, KernelVariant variant);

// Piecewise form of the two-piece kernel weighted by (x-t)^(n-1), node
// anywhere in [a,b].
std::vector<KernelPiece> fink_kernel_pieces(int n, const Rational& x, const Rational& a,
                                            const Rational& b);

// Piecewise form of the bare three-piece kernel S.
std::vector<KernelPiece> s_pieces(const Rational& x, const Rational& a, const Rational& b);

// Interior points where any kernel piece changes: {x, (a+b)/2, a+b-x} clipped
// to (a,b). Useful as integration breakpoints.
std::vector<double> kernel_breakpoints(double x, double a, double b);

}  // namespace kernels
}  // namespace finkquad
