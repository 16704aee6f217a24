#include "finkquad/bounds.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace finkquad {
namespace bounds {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial_d(int n) { return factorial(n).to_double(); }

bool is_inf(double p) { return std::isinf(p) && p > 0.0; }

// 2^(-n-2) - 2^(-2n-2), the dyadic factor shared by the range-based cases.
double dyadic_gap(int n) { return std::ldexp(1.0, -n - 2) - std::ldexp(1.0, -2 * n - 2); }

// ((n-2)/n)^(n-2) with 0^0 = 1 at n = 2 (std::pow already returns 1 there).
double shape_factor(int n) { return std::pow((n - 2.0) / n, n - 2.0); }

void require_order_ge2(int n) {
  if (n < 2) throw Error(Errc::Domain, "bound defined for n >= 2 only");
}

void require_case_index(int case_index) {
  if (case_index < 1 || case_index > 5)
    throw Error(Errc::Domain, "case index must be in 1..5");
}

double quarter_deviation(const Rational& x, const Rational& a, const Rational& b) {
  Rational quarter = (Rational(3) * a + b) / Rational(4);
  return abs(x - quarter).to_double();
}

double mean_of(const std::function<double(double)>& g, double c, double d, double tol,
               std::span<const double> breakpoints) {
  return oracle::integrate_adaptive(g, c, d, tol, breakpoints).value / (d - c);
}

}  // namespace

double beta_fn(double u, double v) {
  if (!(u > 0.0) || !(v > 0.0))
    throw Error(Errc::Domain, "beta_fn needs positive arguments");
  bool u_int = u == std::floor(u) && u < 1e4;
  bool v_int = v == std::floor(v) && v < 1e4;
  if (u_int && v_int) {
    int m = static_cast<int>(u);
    int k = static_cast<int>(v);
    return (factorial(m - 1) * factorial(k - 1) / factorial(m + k - 1)).to_double();
  }
  return std::exp(std::lgamma(u) + std::lgamma(v) - std::lgamma(u + v));
}

double two_point_lp_constant(int n, double p, const Rational& x, const Rational& a,
                             const Rational& b) {
  if (n < 1) throw Error(Errc::Domain, "order n must be >= 1");
  kernels::check_node(x, a, b);
  if (!(p >= 1.0)) throw Error(Errc::Domain, "p must lie in [1, inf]");
  double w = (b - a).to_double();
  if (p == 1.0) {
    double peak = w / 4.0 + quarter_deviation(x, a, b);
    // (n-1)/n)^(n-1) hits 0^0 at n = 1; the convention is 1.
    return std::pow((n - 1.0) / n, n - 1.0) * std::pow(peak, n) / (n * factorial_d(n) * w);
  }
  double q = is_inf(p) ? 1.0 : p / (p - 1.0);
  Rational mid = (a + b) / Rational(2);
  double xa = (x - a).to_double();
  double mx = (mid - x).to_double();
  double core = std::pow(xa, n * q + 1.0) + std::pow(mx, n * q + 1.0);
  double beta = beta_fn((n - 1.0) * q + 1.0, q + 1.0);
  return std::pow(2.0, 1.0 / q) / (factorial_d(n) * w) * std::pow(core, 1.0 / q) *
         std::pow(beta, 1.0 / q);
}

double harmonic_lp_constant(int n, double p, const Rational& x, const Rational& a,
                            const Rational& b, const HarmonicSeq& seq, double tol) {
  if (n < 1) throw Error(Errc::Domain, "order n must be >= 1");
  kernels::check_node(x, a, b);
  if (!(p >= 1.0)) throw Error(Errc::Domain, "p must lie in [1, inf]");
  if (seq.max_order() < n - 1)
    throw Error(Errc::Domain, "sequence must serve order n-1");
  seq.require_valid();
  double ad = a.to_double(), bd = b.to_double(), xd = x.to_double();
  double w = bd - ad;
  const RationalPoly& pn1 = seq.at(n - 1);
  auto g = [&pn1, xd, ad, bd](double t) {
    return std::abs(pn1.eval_d(t)) * std::abs(kernels::eval_S(t, xd, ad, bd));
  };
  std::vector<double> bps = kernels::kernel_breakpoints(xd, ad, bd);
  double scale = 1.0 / (n * w);
  if (p == 1.0) return scale * oracle::sup_on_interval(g, ad, bd, bps);
  if (is_inf(p)) return scale * oracle::integrate_adaptive(g, ad, bd, tol, bps).value;
  double q = p / (p - 1.0);
  return scale * oracle::lp_norm(g, q, ad, bd, tol, bps);
}

double harmonic_lp_constant_relaxed(int n, double q, const Rational& x, const Rational& a,
                                    const Rational& b, const HarmonicSeq& seq) {
  if (n < 1) throw Error(Errc::Domain, "order n must be >= 1");
  kernels::check_node(x, a, b);
  if (!(q >= 1.0)) throw Error(Errc::Domain, "q must lie in [1, inf]");
  if (seq.max_order() < n - 1)
    throw Error(Errc::Domain, "sequence must serve order n-1");
  double w = (b - a).to_double();
  double bracket = 0.25 + quarter_deviation(x, a, b) / w;
  return bracket / n * seq.norm(n - 1, q, a.to_double(), b.to_double());
}

double chebyshev_functional(const std::function<double(double)>& h1,
                            const std::function<double(double)>& h2, double c, double d,
                            double tol, std::span<const double> breakpoints) {
  if (!(c < d)) throw Error(Errc::Domain, "empty interval: need c < d");
  auto prod = [&h1, &h2](double t) { return h1(t) * h2(t); };
  double mean12 = mean_of(prod, c, d, tol, breakpoints);
  double mean1 = mean_of(h1, c, d, tol, breakpoints);
  double mean2 = mean_of(h2, c, d, tol, breakpoints);
  return mean12 - mean1 * mean2;
}

Rational chebyshev_functional_exact(const RationalPoly& h1, const RationalPoly& h2,
                                    const Rational& c, const Rational& d) {
  if (!(c < d)) throw Error(Errc::Domain, "empty interval: need c < d");
  Rational w = d - c;
  Rational mean12 = (h1 * h2).integrate(c, d) / w;
  Rational mean1 = h1.integrate(c, d) / w;
  Rational mean2 = h2.integrate(c, d) / w;
  return mean12 - mean1 * mean2;
}

std::array<double, 4> gruss_bound_suite(const GrussStats& s, double c, double d) {
  if (!(c < d)) throw Error(Errc::Domain, "empty interval: need c < d");
  if (s.m1 > s.M1 || s.m2 > s.M2)
    throw Error(Errc::InconsistentStats, "range bounds must satisfy m <= M");
  double w = d - c;
  return {w * w / 12.0 * s.sup_d1 * s.sup_d2,
          0.25 * (s.M1 - s.m1) * (s.M2 - s.m2),
          w / (kPi * kPi) * s.l2_d1 * s.l2_d2,
          0.125 * w * (s.M1 - s.m1) * s.sup_d2};
}

FunctionalValue functional_value(Functional which, const SmoothFn& f, int n,
                                 const Rational& x, const Rational& a, const Rational& b,
                                 KernelVariant kernel, const HarmonicSeq* seq, double tol) {
  if (n < 1) throw Error(Errc::Domain, "order n must be >= 1");
  kernels::check_node(x, a, b);
  double ad = a.to_double(), bd = b.to_double(), xd = x.to_double();
  double nf = factorial_d(n);
  std::vector<double> bps = kernels::kernel_breakpoints(xd, ad, bd);

  std::function<double(double)> h1, h2;
  switch (which) {
    case Functional::P:
      h1 = [&f, n, nf](double t) { return f.derivative(n, t) / nf; };
      h2 = [n, xd, ad, bd, kernel](double t) {
        return kernels::eval_K(n, t, xd, ad, bd, kernel);
      };
      break;
    case Functional::Q:
      h1 = [&f, n, nf, xd, ad, bd](double t) {
        return f.derivative(n, t) * kernels::eval_S(t, xd, ad, bd) / nf;
      };
      h2 = [n, xd](double t) { return std::pow(xd - t, n - 1); };
      break;
    case Functional::L: {
      if (seq == nullptr)
        throw Error(Errc::Domain, "L functional needs a harmonic sequence");
      if (seq->max_order() < n - 1)
        throw Error(Errc::Domain, "sequence must serve order n-1");
      double sign = (n % 2 == 1) ? 1.0 : -1.0;
      const RationalPoly& pn1 = seq->at(n - 1);
      h1 = [&f, n, sign](double t) { return sign / n * f.derivative(n, t); };
      h2 = [&pn1, xd, ad, bd](double t) {
        return pn1.eval_d(t) * kernels::eval_S(t, xd, ad, bd);
      };
      break;
    }
  }

  FunctionalValue out;
  auto prod = [&h1, &h2](double t) { return h1(t) * h2(t); };
  double mean12 = mean_of(prod, ad, bd, tol, bps);
  out.mean_h1 = mean_of(h1, ad, bd, tol, bps);
  out.mean_h2 = mean_of(h2, ad, bd, tol, bps);
  out.value = mean12 - out.mean_h1 * out.mean_h2;

  Rational mid = (a + b) / Rational(2);
  switch (which) {
    case Functional::P: {
      // Published closed form of mean(h2); kernel-variant independent.
      Rational cf = Rational(2) / (b - a) *
                    (pow_i(x - a, n + 1) + pow_i(mid - x, n + 1)) /
                    (Rational(n) * Rational(n + 1));
      out.mean_closed_form = cf.to_double();
      out.mean_diff = out.mean_closed_form - out.mean_h2;
      break;
    }
    case Functional::Q: {
      // Published closed form of mean(h1): the node average of f^(n)/n!.
      out.mean_closed_form =
          (f.derivative(n, xd) + f.derivative(n, ad + bd - xd)) / (2.0 * nf);
      out.mean_diff = out.mean_closed_form - out.mean_h1;
      break;
    }
    case Functional::L: {
      // Published closed form of mean(h2); needs the sequence through n+1.
      HarmonicSeq ext = seq->max_order() >= n + 1 ? *seq : seq->extended(n + 1, a, b);
      Rational cf = (ext.at(n).eval(x) + ext.at(n).eval(a + b - x)) / Rational(2) -
                    (ext.at(n + 1).eval(b) - ext.at(n + 1).eval(a)) / (b - a);
      out.mean_closed_form = cf.to_double();
      out.mean_diff = out.mean_closed_form - out.mean_h2;
      break;
    }
  }
  return out;
}

double FnStats::lp_norm_n(double p) const {
  if (p == 1.0) return norm1_n;
  if (p == 2.0) return norm2_n;
  if (is_inf(p)) return norm_inf_n;
  throw Error(Errc::Domain, "stats carry p in {1, 2, inf} only");
}

double FnStats::lp_norm_next(double p) const {
  if (p == 1.0) return norm1_next;
  if (p == 2.0) return norm2_next;
  if (is_inf(p)) return norm_inf_next;
  throw Error(Errc::Domain, "stats carry p in {1, 2, inf} only");
}

FnStats compute_fn_stats(const SmoothFn& f, int n, const Rational& a, const Rational& b,
                         double tol) {
  if (n < 1) throw Error(Errc::Domain, "order n must be >= 1");
  if (!(a < b)) throw Error(Errc::Domain, "empty interval: need a < b");
  double ad = a.to_double(), bd = b.to_double();
  double inf = std::numeric_limits<double>::infinity();
  auto dn = [&f, n](double t) { return f.derivative(n, t); };
  auto dnext = [&f, n](double t) { return f.derivative(n + 1, t); };
  auto dn_neg = [&f, n](double t) { return -f.derivative(n, t); };

  FnStats s;
  s.norm1_n = oracle::lp_norm(dn, 1.0, ad, bd, tol);
  s.norm2_n = oracle::lp_norm(dn, 2.0, ad, bd, tol);
  s.norm_inf_n = oracle::lp_norm(dn, inf, ad, bd, tol);
  s.norm1_next = oracle::lp_norm(dnext, 1.0, ad, bd, tol);
  s.norm2_next = oracle::lp_norm(dnext, 2.0, ad, bd, tol);
  s.norm_inf_next = oracle::lp_norm(dnext, inf, ad, bd, tol);
  s.range_max_n = oracle::sup_on_interval(dn, ad, bd);
  s.range_min_n = -oracle::sup_on_interval(dn_neg, ad, bd);
  if (f.is_poly()) {
    s.endpoint_flag = f.derivative_exact(n - 1, a) == f.derivative_exact(n - 1, b);
  } else {
    double fa = f.derivative(n - 1, ad);
    double fb = f.derivative(n - 1, bd);
    double scale = std::max({1.0, std::abs(fa), std::abs(fb)});
    s.endpoint_flag = std::abs(fa - fb) <= 1e-12 * scale;
  }
  return s;
}

BoundReport make_bound_report(std::string name, BoundMode mode, double bound_value,
                              double residual_abs, std::string note,
                              std::optional<double> alt) {
  BoundReport r;
  r.bound_name = std::move(name);
  r.mode = mode;
  r.bound_value = bound_value;
  r.residual_abs = residual_abs;
  r.holds = residual_abs <= bound_value + kHoldsTol;
  r.slack = bound_value - residual_abs;
  r.note = std::move(note);
  r.bound_value_alt = alt;
  return r;
}

std::pair<Rational, Rational> p_case_l2_weights(int n) {
  require_order_ge2(n);
  Rational den = Rational(2 * n - 1) * Rational(2 * n - 2) * Rational(2 * n - 3);
  Rational wa = Rational(2) * Rational(n - 1) * Rational(n - 1) / den;
  Rational wb = (pow_i(Rational(2), 2 * n - 3) * Rational(2 * n - 1) * Rational(2 * n - 2) +
                 Rational(4 * n) * Rational(2 * n - 1) + Rational(2 * n * n)) /
                den;
  return {wa, wb};
}

double p_functional_case_bound(int case_index, int n, const Rational& x, const Rational& a,
                               const Rational& b, const FnStats& stats) {
  require_order_ge2(n);
  require_case_index(case_index);
  kernels::check_node(x, a, b);
  double w = (b - a).to_double();
  double peak = w / 4.0 + quarter_deviation(x, a, b);
  double shape = shape_factor(n);
  double quad_coeff = n * n - 2.0 * n + 2.0;
  double f2 = factorial_d(n) * factorial_d(n);
  double spread = stats.range_max_n - stats.range_min_n;
  switch (case_index) {
    case 1:
      return w * w * shape * quad_coeff / (12.0 * n * f2) * std::pow(peak, n - 1) *
             stats.norm_inf_next;
    case 2:
      return shape * quad_coeff / (4.0 * n * f2) * dyadic_gap(n) * std::pow(w, n - 2) *
             spread;
    case 3: {
      auto [wa, wb] = p_case_l2_weights(n);
      Rational mid = (a + b) / Rational(2);
      double xa = (x - a).to_double();
      double mx = (mid - x).to_double();
      double root = std::sqrt(wa.to_double() * std::pow(xa, 2 * n - 1) +
                              wb.to_double() * std::pow(mx, 2 * n - 1));
      return w / (f2 * kPi * kPi) * root * stats.norm2_next;
    }
    case 4:
      return w * shape * quad_coeff / (8.0 * n * f2) * std::pow(peak, n - 1) * spread;
    default:
      return shape * quad_coeff / (8.0 * n * f2) * dyadic_gap(n) * std::pow(w, n) *
             stats.norm_inf_next;
  }
}

SeqKernelStats compute_seq_kernel_stats(const HarmonicSeq& seq, int n, const Rational& x,
                                        const Rational& a, const Rational& b, double tol) {
  require_order_ge2(n);
  kernels::check_node(x, a, b);
  if (seq.max_order() < n - 1)
    throw Error(Errc::Domain, "sequence must serve order n-1");
  seq.require_valid();
  double ad = a.to_double(), bd = b.to_double(), xd = x.to_double();
  std::vector<double> bps = kernels::kernel_breakpoints(xd, ad, bd);
  const RationalPoly& pn1 = seq.at(n - 1);
  const RationalPoly& pn2 = seq.at(n - 2);
  auto combo = [&pn1, &pn2, xd, ad, bd](double t) {
    return pn1.eval_d(t) + pn2.eval_d(t) * kernels::eval_S(t, xd, ad, bd);
  };
  auto combo_abs = [&combo](double t) { return std::abs(combo(t)); };
  auto ps = [&pn1, xd, ad, bd](double t) {
    return pn1.eval_d(t) * kernels::eval_S(t, xd, ad, bd);
  };
  auto ps_neg = [&ps](double t) { return -ps(t); };

  SeqKernelStats s;
  s.sup_combo = oracle::sup_on_interval(combo_abs, ad, bd, bps);
  s.l2_combo = oracle::lp_norm(combo, 2.0, ad, bd, tol, bps);
  s.M2 = oracle::sup_on_interval(ps, ad, bd, bps);
  s.m2 = -oracle::sup_on_interval(ps_neg, ad, bd, bps);
  return s;
}

double l_functional_case_bound(int case_index, int n, const FnStats& stats,
                               const SeqKernelStats& seq_stats, const Rational& a,
                               const Rational& b) {
  require_order_ge2(n);
  require_case_index(case_index);
  double w = (b - a).to_double();
  double d1 = stats.range_max_n - stats.range_min_n;
  double d2 = seq_stats.M2 - seq_stats.m2;
  switch (case_index) {
    case 1:
      return w * w / (12.0 * n) * seq_stats.sup_combo * stats.norm_inf_next;
    case 2:
      return d1 * d2 / (4.0 * n);
    case 3:
      return w / (kPi * kPi * n) * seq_stats.l2_combo * stats.norm2_next;
    case 4:
      return w / (8.0 * n) * seq_stats.sup_combo * d1;
    default:
      return w / (8.0 * n) * d2 * stats.norm_inf_next;
  }
}

std::optional<double> l_functional_case_bound_alt(int case_index, int n, const FnStats& stats,
                                                  const SeqKernelStats& seq_stats,
                                                  const Rational& a, const Rational& b) {
  if (case_index != 2 && case_index != 4) return std::nullopt;
  return l_functional_case_bound(case_index, n, stats, seq_stats, a, b) / n;
}

double node_rule_case_bound(int case_index, NodePreset node, int n, const Rational& a,
                            const Rational& b, const FnStats& stats) {
  require_order_ge2(n);
  require_case_index(case_index);
  if (!stats.endpoint_flag)
    throw Error(Errc::HypothesisUnmet, "needs f^(n-1)(a) == f^(n-1)(b)");
  double w = (b - a).to_double();
  double shape = shape_factor(n);
  double quad_coeff = n * n - 2.0 * n + 2.0;
  double f2 = factorial_d(n) * factorial_d(n);
  double spread = stats.range_max_n - stats.range_min_n;
  // Peak scale 2^-(n-1) for the endpoint and midpoint nodes, 4^-(n-1) for the
  // quarter node; cases 2 and 5 are node independent.
  double peak_pow = node == NodePreset::Quarter ? std::pow(4.0, 1.0 - n)
                                                : std::pow(2.0, 1.0 - n);
  switch (case_index) {
    case 1:
      return peak_pow * shape * quad_coeff / (12.0 * n * f2) * std::pow(w, n + 2) *
             stats.norm_inf_next;
    case 2:
      return shape * quad_coeff / (4.0 * n * f2) * dyadic_gap(n) * std::pow(w, n - 1) *
             spread;
    case 3: {
      auto [wa, wb] = p_case_l2_weights(n);
      double root, scale;
      switch (node) {
        case NodePreset::Left:
          root = std::sqrt(wb.to_double());
          scale = std::pow(2.0, 0.5 - n);
          break;
        case NodePreset::Quarter:
          root = std::sqrt(wa.to_double() + wb.to_double());
          scale = std::pow(4.0, 0.5 - n);
          break;
        default:
          root = std::sqrt(wa.to_double());
          scale = std::pow(2.0, 0.5 - n);
          break;
      }
      return std::pow(w, n + 1.5) * scale / (f2 * kPi * kPi) * root * stats.norm2_next;
    }
    case 4:
      return peak_pow * shape * quad_coeff / (8.0 * n * f2) * std::pow(w, n + 1) * spread;
    default:
      return shape * quad_coeff / (8.0 * n * f2) * dyadic_gap(n) * std::pow(w, n + 1) *
             stats.norm_inf_next;
  }
}

double harmonic_rule_case_bound(int case_index, int n, const FnStats& stats,
                                const SeqKernelStats& seq_stats, const Rational& a,
                                const Rational& b) {
  if (!stats.endpoint_flag)
    throw Error(Errc::HypothesisUnmet, "needs f^(n-1)(a) == f^(n-1)(b)");
  double w = (b - a).to_double();
  return w * l_functional_case_bound(case_index, n, stats, seq_stats, a, b);
}

std::optional<double> harmonic_rule_case_bound_alt(int case_index, int n, const FnStats& stats,
                                                   const SeqKernelStats& seq_stats,
                                                   const Rational& a, const Rational& b) {
  if (case_index != 2 && case_index != 4) return std::nullopt;
  return harmonic_rule_case_bound(case_index, n, stats, seq_stats, a, b) / n;
}

}  // namespace bounds
}  // namespace finkquad
