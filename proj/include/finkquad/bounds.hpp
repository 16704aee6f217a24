#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "finkquad/appell.hpp"
#include "finkquad/funcmodel.hpp"
#include "finkquad/kernels.hpp"
#include "finkquad/oracle.hpp"
#include "finkquad/rules.hpp"

namespace finkquad {
namespace bounds {

// Comparison cushion used when a published bound is checked against a
// measured residual.
inline constexpr double kHoldsTol = 1e-9;

// Euler Beta. Integer arguments take the exact factorial path
// (m-1)!(v-1)!/(m+v-1)!; everything else goes through log-gamma with
// relative error <= 1e-13. Throws Domain for nonpositive arguments.
double beta_fn(double u, double v);

// Constant multiplying ||f^(n)||_p in the L^p error bound for the symmetric
// two-point rule, stated for the (1/(b-a)) Int f normalization. p = 1 takes
// the closed sup form (0^0 = 1 at n = 1); p in (1, inf] takes the Beta form
// with the conjugate exponent q = p/(p-1). Pass infinity for p = inf.
double two_point_lp_constant(int n, double p, const Rational& x, const Rational& a,
                             const Rational& b);

// Constant N multiplying ||f^(n)||_p for the harmonic-sequence rule. All
// three branches are evaluated by the oracle on |P_(n-1)(t)| |S(t,x)|.
double harmonic_lp_constant(int n, double p, const Rational& x, const Rational& a,
                            const Rational& b, const HarmonicSeq& seq,
                            double tol = oracle::kDefaultTol);

// Relaxed constant (1/n)[1/4 + |x-(3a+b)/4|/(b-a)] ||P_(n-1)||_q; dominates
// harmonic_lp_constant at the conjugate exponent because sup|S| equals
// (b-a)/4 + |x-(3a+b)/4|.
double harmonic_lp_constant_relaxed(int n, double q, const Rational& x, const Rational& a,
                                    const Rational& b, const HarmonicSeq& seq);

// (1/(d-c)) Int h1 h2 - (1/(d-c)) Int h1 * (1/(d-c)) Int h2.
double chebyshev_functional(const std::function<double(double)>& h1,
                            const std::function<double(double)>& h2, double c, double d,
                            double tol = oracle::kDefaultTol,
                            std::span<const double> breakpoints = {});
Rational chebyshev_functional_exact(const RationalPoly& h1, const RationalPoly& h2,
                                    const Rational& c, const Rational& d);

// Inputs for the four Chebyshev-functional bounds. Callers fill whichever
// entries their cases consume; ranges must satisfy m <= M.
struct GrussStats {
  double sup_d1 = 0.0;  // ||h1'||_inf
  double sup_d2 = 0.0;  // ||h2'||_inf
  double m1 = 0.0, M1 = 0.0;
  double m2 = 0.0, M2 = 0.0;
  double l2_d1 = 0.0;  // ||h1'||_2
  double l2_d2 = 0.0;  // ||h2'||_2
};

// [ (d-c)^2/12 ||h1'||inf ||h2'||inf,
//   (1/4)(M1-m1)(M2-m2),
//   (d-c)/pi^2 ||h1'||2 ||h2'||2,
//   (1/8)(d-c)(M1-m1)||h2'||inf ].
// Throws InconsistentStats when a range is inverted.
std::array<double, 4> gruss_bound_suite(const GrussStats& s, double c, double d);

// The three Chebyshev-functional pairings built from a rule configuration:
//   P: h1 = f^(n)/n!,                h2 = K_n(t,x) under the given variant
//   Q: h1 = f^(n)(t) S(t,x)/n!,      h2 = (x-t)^(n-1)
//   L: h1 = ((-1)^(n-1)/n) f^(n),    h2 = P_(n-1)(t) S(t,x)
enum class Functional { P, Q, L };

struct FunctionalValue {
  double value = 0.0;  // C(h1, h2) with both means from the oracle
  double mean_h1 = 0.0;
  double mean_h2 = 0.0;
  // One mean also has a published closed form (mean_h2 for P and L, mean_h1
  // for Q); the diff is closed form minus the oracle value of that mean.
  double mean_closed_form = 0.0;
  double mean_diff = 0.0;
};

// seq is required for L and must serve order n-1; the closed-form mean
// extends it through n+1 internally when needed. The closed forms for P and
// Q do not depend on the kernel variant; the oracle means do (P only).
FunctionalValue functional_value(Functional which, const SmoothFn& f, int n,
                                 const Rational& x, const Rational& a, const Rational& b,
                                 KernelVariant kernel, const HarmonicSeq* seq = nullptr,
                                 double tol = oracle::kDefaultTol);

// Oracle-measured norms and ranges of the derivative orders the bounds
// consume. endpoint_flag is exact for polynomial f, tolerance-based
// otherwise.
struct FnStats {
  double norm1_n = 0.0, norm2_n = 0.0, norm_inf_n = 0.0;          // ||f^(n)||_p
  double norm1_next = 0.0, norm2_next = 0.0, norm_inf_next = 0.0;  // ||f^(n+1)||_p
  double range_min_n = 0.0, range_max_n = 0.0;                     // f^(n) on [a,b]
  bool endpoint_flag = false;  // f^(n-1)(a) == f^(n-1)(b)

  double lp_norm_n(double p) const;     // p in {1, 2, inf}
  double lp_norm_next(double p) const;  // p in {1, 2, inf}
};
FnStats compute_fn_stats(const SmoothFn& f, int n, const Rational& a, const Rational& b,
                         double tol = oracle::kDefaultTol);

// Assert rows hard-fail the run when violated; audit rows only report.
enum class BoundMode { Assert, Audit };

struct BoundReport {
  std::string bound_name;
  BoundMode mode = BoundMode::Audit;
  double bound_value = 0.0;
  double residual_abs = 0.0;
  bool holds = false;  // residual_abs <= bound_value + kHoldsTol
  double slack = 0.0;  // bound_value - residual_abs
  std::string note;    // "", "HYPOTHESIS_UNMET", or convention remarks
  std::optional<double> bound_value_alt;  // second reading where one exists
};

BoundReport make_bound_report(std::string name, BoundMode mode, double bound_value,
                              double residual_abs, std::string note = {},
                              std::optional<double> alt = std::nullopt);

// Exact weights of the L2 case of the P-functional bounds: first scales
// (x-a)^(2n-1), second scales ((a+b)/2-x)^(2n-1). Needs n >= 2.
std::pair<Rational, Rational> p_case_l2_weights(int n);

// Published five-case bound values on |C(f^(n)/n!, K_n)|, n >= 2 with the
// 0^0 = 1 convention in ((n-2)/n)^(n-2). Cases:
//   1 Linf(f^(n+1))  2 range(f^(n))  3 L2(f^(n+1))
//   4 range(f^(n)), one-sided estimate  5 Linf(f^(n+1)), sup-S estimate
double p_functional_case_bound(int case_index, int n, const Rational& x, const Rational& a,
                               const Rational& b, const FnStats& stats);

// Oracle statistics on the sequence-kernel products entering the
// L-functional bounds. Needs a sequence serving order n-1 (n >= 2).
struct SeqKernelStats {
  double sup_combo = 0.0;  // ||P_(n-1) + P_(n-2) S(.,x)||_inf
  double l2_combo = 0.0;   // (Int |P_(n-1) + P_(n-2) S|^2)^(1/2)
  double m2 = 0.0, M2 = 0.0;  // range of P_(n-1)(t) S(t,x)
};
SeqKernelStats compute_seq_kernel_stats(const HarmonicSeq& seq, int n, const Rational& x,
                                        const Rational& a, const Rational& b,
                                        double tol = oracle::kDefaultTol);

// Published five-case bound values on |C(((-1)^(n-1)/n) f^(n), P_(n-1) S)|.
// Cases 2 and 4 read (m1, M1) as the range of f^(n); the companion _alt
// value folds the 1/n of h1 into the range instead (bound / n).
double l_functional_case_bound(int case_index, int n, const FnStats& stats,
                               const SeqKernelStats& seq_stats, const Rational& a,
                               const Rational& b);
std::optional<double> l_functional_case_bound_alt(int case_index, int n, const FnStats& stats,
                                                  const SeqKernelStats& seq_stats,
                                                  const Rational& a, const Rational& b);

// Published five-case bounds on the absolute quadrature error of the
// two-point rule at the three preset nodes. Requires the endpoint
// hypothesis f^(n-1)(a) == f^(n-1)(b) (throws HypothesisUnmet) and n >= 2.
double node_rule_case_bound(int case_index, NodePreset node, int n, const Rational& a,
                            const Rational& b, const FnStats& stats);

// Same for the harmonic-sequence rule at arbitrary x: (b-a) times the
// corresponding L-functional case. Same hypothesis and _alt convention.
double harmonic_rule_case_bound(int case_index, int n, const FnStats& stats,
                                const SeqKernelStats& seq_stats, const Rational& a,
                                const Rational& b);
std::optional<double> harmonic_rule_case_bound_alt(int case_index, int n, const FnStats& stats,
                                                   const SeqKernelStats& seq_stats,
                                                   const Rational& a, const Rational& b);

}  // namespace bounds
}  // namespace finkquad
