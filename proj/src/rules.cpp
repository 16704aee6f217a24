#include "finkquad/rules.hpp"

#include <cmath>
#include <vector>

#include "finkquad/oracle.hpp"

namespace finkquad {

Rational preset_node(NodePreset preset, const Rational& a, const Rational& b) {
  switch (preset) {
    case NodePreset::Left: return a;
    case NodePreset::Quarter: return (Rational(3) * a + b) / Rational(4);
    case NodePreset::Midpoint: return (a + b) / Rational(2);
  }
  throw Error(Errc::Domain, "corrupt node preset");
}

void RuleSpec::validate() const {
  if (n < 1) throw Error(Errc::Domain, "rule order n must be >= 1");
  if (!(a < b)) throw Error(Errc::Domain, "empty interval: need a < b");
  if (variant == RuleVariant::Fink) {
    if (x < a || x > b) throw Error(Errc::NodeRange, "node x must lie in [a, b]");
  } else {
    kernels::check_node(x, a, b);
  }
  if (variant == RuleVariant::TF) {
    if (!seq) throw Error(Errc::Domain, "TF variant needs a harmonic sequence");
    seq->require_valid();
    if (seq->max_order() < n - 1)
      throw Error(Errc::Domain, "sequence must reach order n-1 = " + std::to_string(n - 1));
  }
}

namespace rules {

namespace {

// Derivative-tower access duplicated for the exact and numeric scalar types so
// one set of correction formulas serves both paths.
struct ExactEnv {
  using Scalar = Rational;
  const SmoothFn* f;
  const HarmonicSeq* seq = nullptr;
  Rational df(int order, const Rational& t) const { return f->derivative_exact(order, t); }
  Rational pk(int k, const Rational& t) const { return seq->at(k).eval(t); }
};

struct NumEnv {
  using Scalar = double;
  const SmoothFn* f;
  const HarmonicSeq* seq = nullptr;
  double df(int order, double t) const { return f->derivative(order, t); }
  double pk(int k, double t) const { return seq->at(k).eval_d(t); }
};

template <class T>
T factorial_t(int k) {
  T acc(1);
  for (int i = 2; i <= k; ++i) acc = acc * T(i);
  return acc;
}

template <class Env, class T = typename Env::Scalar>
T correction_G_impl(const Env& env, int k, int n, const T& x, const T& a, const T& b) {
  if (k < 1 || k > n - 1) throw Error(Errc::Domain, "correction index k must be in [1, n-1]");
  T mid = (a + b) / T(2);
  T sgn = (k % 2 == 1) ? T(1) : T(-1);  // (-1)^(k+1)
  T bracket = kernels::pow_n(x - a, k) * (env.df(k - 1, a) + sgn * env.df(k - 1, b));
  T midterm = (T(1) + sgn) * kernels::pow_n(mid - x, k) * env.df(k - 1, mid);
  return T(n - k) / (factorial_t<T>(k) * (b - a)) * (bracket + midterm);
}

template <class Env, class T = typename Env::Scalar>
T correction_T_impl(const Env& env, int k, const T& x, const T& a, const T& b) {
  if (k < 1) throw Error(Errc::Domain, "correction index k must be >= 1");
  T refl = a + b - x;
  T sgn = (k % 2 == 0) ? T(1) : T(-1);  // (-1)^k
  return sgn / T(2) * (env.pk(k, x) * env.df(k, x) + env.pk(k, refl) * env.df(k, refl));
}

template <class Env, class T = typename Env::Scalar>
T correction_Ftilde_impl(const Env& env, int k, int n, const T& a, const T& b) {
  if (k < 1 || k > n - 1) throw Error(Errc::Domain, "correction index k must be in [1, n-1]");
  T sgn = (k % 2 == 0) ? T(1) : T(-1);  // (-1)^k
  return sgn * T(n - k) / (b - a) *
         (env.pk(k, a) * env.df(k - 1, a) - env.pk(k, b) * env.df(k - 1, b));
}

template <class Env, class T = typename Env::Scalar>
T correction_F_fink_impl(const Env& env, int k, int n, const T& x, const T& a, const T& b,
                         FinkFactorial convention) {
  if (k < 1 || k > n - 1) throw Error(Errc::Domain, "correction index k must be in [1, n-1]");
  T fact = convention == FinkFactorial::ByTermK ? factorial_t<T>(k) : factorial_t<T>(n);
  T term = env.df(k - 1, a) * kernels::pow_n(x - a, k) -
           env.df(k - 1, b) * kernels::pow_n(x - b, k);
  return T(n - k) / fact * term / (b - a);
}

// Sum of the variant's correction terms (empty for n = 1).
template <class Env, class T = typename Env::Scalar>
T correction_sum(const Env& env, const RuleSpec& spec, const T& x, const T& a, const T& b) {
  T acc(0);
  for (int k = 1; k <= spec.n - 1; ++k) {
    switch (spec.variant) {
      case RuleVariant::G:
        acc += correction_G_impl(env, k, spec.n, x, a, b);
        break;
      case RuleVariant::TF:
        acc += correction_T_impl(env, k, x, a, b) +
               correction_Ftilde_impl(env, k, spec.n, a, b);
        break;
      case RuleVariant::Fink:
        acc += correction_F_fink_impl(env, k, spec.n, x, a, b, spec.fink_factorial);
        break;
    }
  }
  return acc;
}

template <class Env, class T = typename Env::Scalar>
T rule_value(const Env& env, const RuleSpec& spec, const T& x, const T& a, const T& b) {
  T nodes = spec.variant == RuleVariant::Fink
                ? env.df(0, x)
                : (env.df(0, x) + env.df(0, a + b - x)) / T(2);
  return (b - a) / T(spec.n) * (nodes + correction_sum(env, spec, x, a, b));
}

Rational remainder_exact_impl(const RuleSpec& spec, const SmoothFn& f) {
  const RationalPoly& fn = f.derived_poly(spec.n);
  std::vector<kernels::KernelPiece> pieces;
  Rational scale;
  if (spec.variant == RuleVariant::TF) {
    pieces = kernels::s_pieces(spec.x, spec.a, spec.b);
    const RationalPoly& pnm1 = spec.seq->at(spec.n - 1);
    for (auto& piece : pieces) piece.poly = piece.poly * pnm1;
    // -((-1)^(n-1)/n)
    scale = Rational(spec.n % 2 == 1 ? -1 : 1) / Rational(spec.n);
  } else {
    pieces = spec.variant == RuleVariant::Fink
                 ? kernels::fink_kernel_pieces(spec.n, spec.x, spec.a, spec.b)
                 : kernels::kernel_pieces(spec.n, spec.x, spec.a, spec.b, spec.kernel);
    scale = Rational(-1) / factorial(spec.n);
  }
  Rational acc(0);
  for (const auto& piece : pieces) acc += (piece.poly * fn).integrate(piece.lo, piece.hi);
  return scale * acc;
}

double remainder_numeric_impl(const RuleSpec& spec, const SmoothFn& f, double tol) {
  const int n = spec.n;
  const double x = spec.x.to_double(), a = spec.a.to_double(), b = spec.b.to_double();
  auto breaks = kernels::kernel_breakpoints(x, a, b);
  double scale;
  std::function<double(double)> integrand;
  if (spec.variant == RuleVariant::TF) {
    const RationalPoly& pnm1 = spec.seq->at(n - 1);
    integrand = [&, n](double t) {
      return pnm1.eval_d(t) * kernels::eval_S(t, x, a, b) * f.derivative(n, t);
    };
    scale = (n % 2 == 1 ? -1.0 : 1.0) / n;
  } else if (spec.variant == RuleVariant::Fink) {
    integrand = [&, n](double t) {
      return kernels::pow_n(x - t, n - 1) * kernels::eval_p(t, x, a, b) * f.derivative(n, t);
    };
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    scale = -1.0 / fact;
  } else {
    integrand = [&, n](double t) {
      return kernels::eval_K(n, t, x, a, b, spec.kernel) * f.derivative(n, t);
    };
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    scale = -1.0 / fact;
  }
  return scale * oracle::integrate_adaptive(integrand, a, b, tol, breaks).value;
}

}  // namespace

double correction_G(int k, int n, double x, double a, double b, const SmoothFn& f) {
  return correction_G_impl(NumEnv{&f}, k, n, x, a, b);
}

Rational correction_G_exact(int k, int n, const Rational& x, const Rational& a,
                            const Rational& b, const SmoothFn& f) {
  return correction_G_impl(ExactEnv{&f}, k, n, x, a, b);
}

double correction_T(int k, double x, double a, double b, const SmoothFn& f,
                    const HarmonicSeq& seq) {
  return correction_T_impl(NumEnv{&f, &seq}, k, x, a, b);
}

Rational correction_T_exact(int k, const Rational& x, const Rational& a, const Rational& b,
                            const SmoothFn& f, const HarmonicSeq& seq) {
  return correction_T_impl(ExactEnv{&f, &seq}, k, x, a, b);
}

double correction_Ftilde(int k, int n, double a, double b, const SmoothFn& f,
                         const HarmonicSeq& seq) {
  return correction_Ftilde_impl(NumEnv{&f, &seq}, k, n, a, b);
}

Rational correction_Ftilde_exact(int k, int n, const Rational& a, const Rational& b,
                                 const SmoothFn& f, const HarmonicSeq& seq) {
  return correction_Ftilde_impl(ExactEnv{&f, &seq}, k, n, a, b);
}

double correction_F_fink(int k, int n, double x, double a, double b, const SmoothFn& f,
                         FinkFactorial convention) {
  return correction_F_fink_impl(NumEnv{&f}, k, n, x, a, b, convention);
}

Rational correction_F_fink_exact(int k, int n, const Rational& x, const Rational& a,
                                 const Rational& b, const SmoothFn& f,
                                 FinkFactorial convention) {
  return correction_F_fink_impl(ExactEnv{&f}, k, n, x, a, b, convention);
}

double remainder_eval(const RuleSpec& spec, const SmoothFn& f, double tol) {
  spec.validate();
  if (f.is_poly()) return remainder_exact_impl(spec, f).to_double();
  return remainder_numeric_impl(spec, f, tol);
}

Rational remainder_eval_exact(const RuleSpec& spec, const SmoothFn& f) {
  spec.validate();
  return remainder_exact_impl(spec, f);  // derived_poly throws Domain for non-poly
}

RuleResult quad_two_point(const RuleSpec& spec, const SmoothFn& f, double tol) {
  spec.validate();
  if (spec.variant == RuleVariant::Fink)
    return quad_fink(spec.n, spec.x, spec.a, spec.b, f, spec.fink_factorial, tol);
  RuleResult out;
  if (f.is_poly()) {
    ExactEnv env{&f, spec.seq ? &*spec.seq : nullptr};
    Rational v = rule_value(env, spec, spec.x, spec.a, spec.b);
    Rational r = remainder_exact_impl(spec, f);
    out.exact = true;
    out.value_exact = v;
    out.remainder_exact = r;
    out.value = v.to_double();
    out.remainder = r.to_double();
  } else {
    NumEnv env{&f, spec.seq ? &*spec.seq : nullptr};
    out.value = rule_value(env, spec, spec.x.to_double(), spec.a.to_double(),
                           spec.b.to_double());
    out.remainder = remainder_numeric_impl(spec, f, tol);
  }
  return out;
}

RuleResult quad_fink(int n, const Rational& x, const Rational& a, const Rational& b,
                     const SmoothFn& f, FinkFactorial convention, double tol) {
  RuleSpec spec;
  spec.n = n;
  spec.a = a;
  spec.b = b;
  spec.x = x;
  spec.variant = RuleVariant::Fink;
  spec.fink_factorial = convention;
  spec.validate();
  RuleResult out;
  if (f.is_poly()) {
    ExactEnv env{&f};
    Rational v = rule_value(env, spec, x, a, b);
    Rational r = remainder_exact_impl(spec, f);
    out.exact = true;
    out.value_exact = v;
    out.remainder_exact = r;
    out.value = v.to_double();
    out.remainder = r.to_double();
  } else {
    NumEnv env{&f};
    out.value = rule_value(env, spec, x.to_double(), a.to_double(), b.to_double());
    out.remainder = remainder_numeric_impl(spec, f, tol);
  }
  return out;
}

double identity_residual(const RuleSpec& spec, const SmoothFn& f, double tol) {
  RuleResult r = quad_two_point(spec, f, tol);
  if (r.exact)
    return (f.integral_exact(spec.a, spec.b) - *r.value_exact - *r.remainder_exact)
        .to_double();
  return f.integral(spec.a.to_double(), spec.b.to_double()) - r.value - r.remainder;
}

Rational identity_residual_exact(const RuleSpec& spec, const SmoothFn& f) {
  RuleResult r = quad_two_point(spec, f);
  if (!r.exact) throw Error(Errc::Domain, "exact residual needs a poly function");
  return f.integral_exact(spec.a, spec.b) - *r.value_exact - *r.remainder_exact;
}

RuleResult composite_rule(const RuleSpec& spec, const SmoothFn& f, long panels,
                          double tol) {
  spec.validate();
  if (panels < 1) throw Error(Errc::Domain, "panel count must be >= 1");
  // Same relative node position on every panel.
  Rational rel = (spec.x - spec.a) / (spec.b - spec.a);
  Rational width = (spec.b - spec.a) / Rational(panels);
  RuleResult out;
  std::vector<double> values;
  values.reserve(static_cast<size_t>(panels));
  Rational value_exact(0);
  bool exact = f.is_poly();
  for (long i = 0; i < panels; ++i) {
    RuleSpec panel = spec;
    panel.a = spec.a + Rational(i) * width;
    panel.b = panel.a + width;
    panel.x = panel.a + rel * width;
    RuleResult r = quad_two_point(panel, f, tol / static_cast<double>(panels));
    values.push_back(r.value);
    if (exact) value_exact += *r.value_exact;
  }
  // Fixed left-to-right pairwise reduction, reproducible regardless of any
  // future parallel split.
  while (values.size() > 1) {
    std::vector<double> next;
    next.reserve(values.size() / 2 + 1);
    for (size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(values[i] + values[i + 1]);
    if (values.size() % 2 == 1) next.push_back(values.back());
    values.swap(next);
  }
  out.value = values.empty() ? 0.0 : values[0];
  if (exact) {
    Rational rem = f.integral_exact(spec.a, spec.b) - value_exact;
    out.exact = true;
    out.value_exact = value_exact;
    out.remainder_exact = rem;
    out.value = value_exact.to_double();
    out.remainder = rem.to_double();
  } else {
    out.remainder = f.integral(spec.a.to_double(), spec.b.to_double()) - out.value;
  }
  return out;
}

}  // namespace rules
}  // namespace finkquad
