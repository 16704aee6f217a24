#include "finkquad/funcmodel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "finkquad/error.hpp"

namespace finkquad {

namespace {

constexpr double kPoleEps = 1e-13;

// Fixed-format double that round-trips; used by spec_string.
std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                                  : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_real(const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::Parse, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

SmoothFn SmoothFn::poly(RationalPoly p, int max_order) {
  if (max_order < 1) throw Error(Errc::Domain, "max_order must be >= 1");
  SmoothFn f;
  f.kind_ = Kind::Poly;
  f.max_order_ = max_order;
  auto derivs = std::make_shared<std::vector<RationalPoly>>();
  derivs->reserve(static_cast<size_t>(max_order) + 2);
  derivs->push_back(std::move(p));
  for (int j = 1; j <= max_order + 1; ++j) derivs->push_back(derivs->back().derivative());
  f.derivs_ = std::move(derivs);
  return f;
}

SmoothFn SmoothFn::exp(double rate, double scale, int max_order) {
  SmoothFn f;
  f.kind_ = Kind::Exp;
  f.rate_ = rate;
  f.scale_ = scale;
  f.max_order_ = max_order;
  return f;
}

SmoothFn SmoothFn::sin(double freq, double phase, double scale, int max_order) {
  SmoothFn f;
  f.kind_ = Kind::Sin;
  f.rate_ = freq;
  f.phase_ = phase;
  f.scale_ = scale;
  f.max_order_ = max_order;
  return f;
}

SmoothFn SmoothFn::cos(double freq, double phase, double scale, int max_order) {
  SmoothFn f;
  f.kind_ = Kind::Cos;
  f.rate_ = freq;
  f.phase_ = phase;
  f.scale_ = scale;
  f.max_order_ = max_order;
  return f;
}

SmoothFn SmoothFn::recip(double shift, double scale, int max_order) {
  SmoothFn f;
  f.kind_ = Kind::Recip;
  f.rate_ = shift;
  f.scale_ = scale;
  f.max_order_ = max_order;
  return f;
}

SmoothFn SmoothFn::parse(std::string_view spec) {
  auto parts = split(spec, ':');
  if (parts.empty() || parts[0].empty()) throw Error(Errc::Parse, "empty function spec");
  const std::string& kind = parts[0];
  size_t nargs = parts.size() - 1;
  if (kind == "poly") {
    if (nargs != 1) throw Error(Errc::Parse, "poly spec wants one coefficient list");
    return poly(RationalPoly::from_string(parts[1]));
  }
  if (kind == "exp" || kind == "recip") {
    if (nargs < 1 || nargs > 2)
      throw Error(Errc::Parse, kind + " spec wants 1 or 2 parameters");
    double p0 = parse_real(parts[1], kind.c_str());
    double sc = nargs == 2 ? parse_real(parts[2], "scale") : 1.0;
    return kind == "exp" ? exp(p0, sc) : recip(p0, sc);
  }
  if (kind == "sin" || kind == "cos") {
    if (nargs < 1 || nargs > 3)
      throw Error(Errc::Parse, kind + " spec wants 1 to 3 parameters");
    double freq = parse_real(parts[1], "frequency");
    double phase = nargs >= 2 ? parse_real(parts[2], "phase") : 0.0;
    double sc = nargs >= 3 ? parse_real(parts[3], "scale") : 1.0;
    return kind == "sin" ? sin(freq, phase, sc) : cos(freq, phase, sc);
  }
  throw Error(Errc::Parse, "unknown function kind '" + kind + "'");
}

std::string SmoothFn::spec_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Poly:
      os << "poly:" << (*derivs_)[0].to_string();
      break;
    case Kind::Exp:
      os << "exp:" << fmt_param(rate_);
      if (scale_ != 1.0) os << ':' << fmt_param(scale_);
      break;
    case Kind::Sin:
    case Kind::Cos:
      os << (kind_ == Kind::Sin ? "sin:" : "cos:") << fmt_param(rate_) << ':'
         << fmt_param(phase_);
      if (scale_ != 1.0) os << ':' << fmt_param(scale_);
      break;
    case Kind::Recip:
      os << "recip:" << fmt_param(rate_);
      if (scale_ != 1.0) os << ':' << fmt_param(scale_);
      break;
  }
  return os.str();
}

double SmoothFn::derivative(int order, double t) const {
  if (order < 0) throw Error(Errc::Domain, "negative derivative order");
  if (order > max_order_ + 1)
    throw Error(Errc::OrderExceeded, "derivative order " + std::to_string(order) +
                                         " exceeds max_order + 1 = " +
                                         std::to_string(max_order_ + 1));
  switch (kind_) {
    case Kind::Poly:
      return (*derivs_)[static_cast<size_t>(order)].eval_d(t);
    case Kind::Exp:
      return scale_ * std::pow(rate_, order) * std::exp(rate_ * t);
    case Kind::Sin:
      return scale_ * std::pow(rate_, order) *
             std::sin(rate_ * t + phase_ + 0.5 * M_PI * order);
    case Kind::Cos:
      return scale_ * std::pow(rate_, order) *
             std::cos(rate_ * t + phase_ + 0.5 * M_PI * order);
    case Kind::Recip: {
      double denom = t + rate_;
      if (std::fabs(denom) < kPoleEps)
        throw Error(Errc::Domain, "evaluation at the pole of 1/(t+shift)");
      // d^j/dt^j (t+c)^(-1) = (-1)^j j! (t+c)^(-j-1)
      double fact = 1.0;
      for (int j = 2; j <= order; ++j) fact *= j;
      double sgn = (order % 2 == 0) ? 1.0 : -1.0;
      return scale_ * sgn * fact * std::pow(denom, -(order + 1));
    }
  }
  throw Error(Errc::Domain, "corrupt function kind");
}

Jet SmoothFn::jet(double t, int m) const {
  if (m < 0) throw Error(Errc::Domain, "negative jet order");
  if (m > max_order_ + 1)
    throw Error(Errc::OrderExceeded, "jet order " + std::to_string(m) +
                                         " exceeds max_order + 1 = " +
                                         std::to_string(max_order_ + 1));
  Jet out;
  out.point = t;
  out.values.reserve(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) out.values.push_back(derivative(j, t));
  return out;
}

const RationalPoly& SmoothFn::poly_coeffs() const {
  if (kind_ != Kind::Poly) throw Error(Errc::Domain, "exact path needs a poly function");
  return (*derivs_)[0];
}

const RationalPoly& SmoothFn::derived_poly(int order) const {
  if (kind_ != Kind::Poly) throw Error(Errc::Domain, "exact path needs a poly function");
  if (order < 0) throw Error(Errc::Domain, "negative derivative order");
  if (order > max_order_ + 1)
    throw Error(Errc::OrderExceeded, "derivative order " + std::to_string(order) +
                                         " exceeds max_order + 1");
  return (*derivs_)[static_cast<size_t>(order)];
}

Rational SmoothFn::derivative_exact(int order, const Rational& t) const {
  return derived_poly(order).eval(t);
}

Rational SmoothFn::integral_exact(const Rational& a, const Rational& b) const {
  return poly_coeffs().integrate(a, b);
}

double SmoothFn::integral(double a, double b) const {
  switch (kind_) {
    case Kind::Poly:
      return integral_exact(Rational::from_double(a), Rational::from_double(b)).to_double();
    case Kind::Exp:
      if (rate_ == 0.0) return scale_ * (b - a);
      return scale_ / rate_ * (std::exp(rate_ * b) - std::exp(rate_ * a));
    case Kind::Sin:
      if (rate_ == 0.0) return scale_ * std::sin(phase_) * (b - a);
      return -scale_ / rate_ * (std::cos(rate_ * b + phase_) - std::cos(rate_ * a + phase_));
    case Kind::Cos:
      if (rate_ == 0.0) return scale_ * std::cos(phase_) * (b - a);
      return scale_ / rate_ * (std::sin(rate_ * b + phase_) - std::sin(rate_ * a + phase_));
    case Kind::Recip: {
      double da = a + rate_, db = b + rate_;
      if (da == 0.0 || db == 0.0 || (da < 0.0) != (db < 0.0))
        throw Error(Errc::Domain, "pole of 1/(t+shift) inside the integration interval");
      return scale_ * std::log(std::fabs(db / da));
    }
  }
  throw Error(Errc::Domain, "corrupt function kind");
}

SmoothFn SmoothFn::reflected(double a, double b) const {
  if (kind_ == Kind::Poly)
    return reflected(Rational::from_double(a), Rational::from_double(b));
  double s = a + b;
  switch (kind_) {
    case Kind::Exp:
      // scale*e^(r(s-t)) = (scale*e^(rs)) e^(-rt)
      return exp(-rate_, scale_ * std::exp(rate_ * s), max_order_);
    case Kind::Sin:
      // sin(w(s-t)+p) = sin(-wt + (ws+p))
      return sin(-rate_, rate_ * s + phase_, scale_, max_order_);
    case Kind::Cos:
      return cos(-rate_, rate_ * s + phase_, scale_, max_order_);
    case Kind::Recip:
      // scale/((s-t)+c) = -scale/(t - (s+c))
      return recip(-(s + rate_), -scale_, max_order_);
    default:
      throw Error(Errc::Unrepresentable, "no catalog form for the reflected function");
  }
}

SmoothFn SmoothFn::reflected(const Rational& a, const Rational& b) const {
  if (kind_ != Kind::Poly) return reflected(a.to_double(), b.to_double());
  return poly(poly_coeffs().reflect(a, b), max_order_);
}

}  // namespace finkquad
