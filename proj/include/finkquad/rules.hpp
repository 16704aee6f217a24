#pragma once

#include <optional>

#include "finkquad/appell.hpp"
#include "finkquad/funcmodel.hpp"
#include "finkquad/kernels.hpp"

namespace finkquad {

// G: symmetric two-point rule with endpoint/midpoint derivative corrections.
// TF: the same node pair with harmonic-sequence corrections T_k + F~_k.
// Fink: the one-point rule with endpoint corrections F_k.
enum class RuleVariant { G, TF, Fink };

// The F_k corrections close the one-point identity only with k! in the
// denominator; the n!-variant is kept for regression/audit of that mismatch.
enum class FinkFactorial { ByTermK, PrintedN };

enum class NodePreset { Left, Quarter, Midpoint };

Rational preset_node(NodePreset preset, const Rational& a, const Rational& b);

struct RuleSpec {
  int n = 1;
  Rational a{0};
  Rational b{1};
  Rational x{0};
  RuleVariant variant = RuleVariant::G;
  KernelVariant kernel = KernelVariant::Canonical;
  std::optional<HarmonicSeq> seq;  // required for TF
  FinkFactorial fink_factorial = FinkFactorial::ByTermK;

  // Throws NodeRange / Domain. G and TF need x in [a,(a+b)/2]; Fink allows
  // x in [a,b]; TF needs a valid sequence of order >= n-1.
  void validate() const;
  Rational mid() const { return (a + b) / Rational(2); }
  Rational reflected_node() const { return a + b - x; }
};

struct RuleResult {
  double value = 0.0;
  double remainder = 0.0;
  bool exact = false;  // rational path used; the fields below are set
  std::optional<Rational> value_exact;
  std::optional<Rational> remainder_exact;
};

namespace rules {

// Endpoint/midpoint correction of order k for the symmetric two-point rule:
// ((n-k)/(k!(b-a))) * { (x-a)^k [f^(k-1)(a) + (-1)^(k+1) f^(k-1)(b)]
//                       + (1+(-1)^(k+1)) ((a+b)/2 - x)^k f^(k-1)((a+b)/2) }
double correction_G(int k, int n, double x, double a, double b, const SmoothFn& f);
Rational correction_G_exact(int k, int n, const Rational& x, const Rational& a,
                            const Rational& b, const SmoothFn& f);

// ((-1)^k/2) * { P_k(x) f^(k)(x) + P_k(a+b-x) f^(k)(a+b-x) }
double correction_T(int k, double x, double a, double b, const SmoothFn& f,
                    const HarmonicSeq& seq);
Rational correction_T_exact(int k, const Rational& x, const Rational& a, const Rational& b,
                            const SmoothFn& f, const HarmonicSeq& seq);

// ((-1)^k (n-k)/(b-a)) * [ P_k(a) f^(k-1)(a) - P_k(b) f^(k-1)(b) ]
double correction_Ftilde(int k, int n, double a, double b, const SmoothFn& f,
                         const HarmonicSeq& seq);
Rational correction_Ftilde_exact(int k, int n, const Rational& a, const Rational& b,
                                 const SmoothFn& f, const HarmonicSeq& seq);

// ((n-k)/k!) * [ f^(k-1)(a)(x-a)^k - f^(k-1)(b)(x-b)^k ] / (b-a), with the
// factorial convention selectable.
double correction_F_fink(int k, int n, double x, double a, double b, const SmoothFn& f,
                         FinkFactorial convention = FinkFactorial::ByTermK);
Rational correction_F_fink_exact(int k, int n, const Rational& x, const Rational& a,
                                 const Rational& b, const SmoothFn& f,
                                 FinkFactorial convention = FinkFactorial::ByTermK);

// Quadrature value + remainder for the requested variant. Polynomial functions
// take the exact rational path; everything else is numeric with the oracle.
RuleResult quad_two_point(const RuleSpec& spec, const SmoothFn& f,
                          double tol = 1e-10);
RuleResult quad_fink(int n, const Rational& x, const Rational& a, const Rational& b,
                     const SmoothFn& f, FinkFactorial convention = FinkFactorial::ByTermK,
                     double tol = 1e-10);

// Remainder alone. G: -(1/n!) Int K_n(t,x) f^(n)(t) dt with spec.kernel;
// TF: -((-1)^(n-1)/n) Int P_(n-1)(t) S(t,x) f^(n)(t) dt;
// Fink: -(1/n!) Int (x-t)^(n-1) p(t,x) f^(n)(t) dt.
double remainder_eval(const RuleSpec& spec, const SmoothFn& f, double tol = 1e-10);
Rational remainder_eval_exact(const RuleSpec& spec, const SmoothFn& f);

// (true integral of f) - value - remainder. Zero for every identity-closing
// configuration; the Printed kernel and the n! Fink convention leave residue.
double identity_residual(const RuleSpec& spec, const SmoothFn& f, double tol = 1e-10);
Rational identity_residual_exact(const RuleSpec& spec, const SmoothFn& f);

// Uniform panels, per-panel node at the same relative position; values summed
// with a fixed left-to-right pairwise reduction. remainder = true integral
// minus value.
RuleResult composite_rule(const RuleSpec& spec, const SmoothFn& f, long panels,
                          double tol = 1e-10);

}  // namespace rules
}  // namespace finkquad
