#include "finkquad/poly.hpp"

#include <sstream>

namespace finkquad {

namespace {
const Rational kZero(0);
}

RationalPoly::RationalPoly(std::vector<Rational> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  normalize();
}

void RationalPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalPoly RationalPoly::constant(const Rational& c) {
  return RationalPoly(std::vector<Rational>{c});
}

RationalPoly RationalPoly::monomial(int degree, const Rational& coeff) {
  if (degree < 0) throw Error(Errc::Domain, "monomial with negative degree");
  std::vector<Rational> cs(static_cast<size_t>(degree) + 1, Rational(0));
  cs.back() = coeff;
  return RationalPoly(std::move(cs));
}

RationalPoly RationalPoly::from_string(std::string_view s) {
  std::vector<Rational> cs;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string_view tok = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - pos);
    cs.push_back(Rational::from_string(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return RationalPoly(std::move(cs));
}

const Rational& RationalPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<size_t>(k)];
}

Rational RationalPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double RationalPoly::eval_d(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->to_double();
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return zero();
  std::vector<Rational> cs;
  cs.reserve(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    cs.push_back(Rational(static_cast<long>(k)) * coeffs_[k]);
  return RationalPoly(std::move(cs));
}

RationalPoly RationalPoly::antiderivative(const Rational& at_zero) const {
  std::vector<Rational> cs;
  cs.reserve(coeffs_.size() + 1);
  cs.push_back(at_zero);
  for (size_t k = 0; k < coeffs_.size(); ++k)
    cs.push_back(coeffs_[k] / Rational(static_cast<long>(k + 1)));
  return RationalPoly(std::move(cs));
}

Rational RationalPoly::integrate(const Rational& a, const Rational& b) const {
  RationalPoly anti = antiderivative();
  return anti.eval(b) - anti.eval(a);
}

RationalPoly RationalPoly::shift(const Rational& s) const {
  // p(t + s) via Horner on polynomial coefficients: acc <- acc*(t+s) + c_k.
  RationalPoly acc;
  RationalPoly lin(std::vector<Rational>{s, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * lin + constant(*it);
  return acc;
}

RationalPoly RationalPoly::reflect(const Rational& a, const Rational& b) const {
  // p(a+b-t): substitute via Horner with the linear map (a+b) - t.
  RationalPoly acc;
  RationalPoly lin(std::vector<Rational>{a + b, Rational(-1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * lin + constant(*it);
  return acc;
}

RationalPoly RationalPoly::operator-() const {
  std::vector<Rational> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(-c);
  return RationalPoly(std::move(cs));
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  normalize();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly::zero();
  std::vector<Rational> cs(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(cs));
}

RationalPoly operator*(const Rational& c, const RationalPoly& p) {
  std::vector<Rational> cs;
  cs.reserve(p.coeffs_.size());
  for (const auto& pc : p.coeffs_) cs.push_back(c * pc);
  return RationalPoly(std::move(cs));
}

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) os << ',';
    os << coeffs_[k].to_string();
  }
  return os.str();
}

}  // namespace finkquad
