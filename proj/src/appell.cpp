#include "finkquad/appell.hpp"

#include <sstream>

#include "finkquad/error.hpp"
#include "finkquad/oracle.hpp"

namespace finkquad {

HarmonicSeq::HarmonicSeq(std::vector<RationalPoly> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw Error(Errc::Domain, "harmonic sequence needs at least P_0");
}

HarmonicSeq HarmonicSeq::power_sequence(const Rational& center, int m) {
  if (m < 0) throw Error(Errc::Domain, "sequence order must be >= 0");
  std::vector<RationalPoly> ps;
  ps.reserve(static_cast<size_t>(m) + 1);
  RationalPoly shifted(std::vector<Rational>{-center, Rational(1)});  // t - y
  RationalPoly acc = RationalPoly::constant(Rational(1));
  ps.push_back(acc);
  for (int k = 1; k <= m; ++k) {
    acc = acc * shifted;
    ps.push_back(Rational(1) / factorial(k) * acc);
  }
  return HarmonicSeq(std::move(ps));
}

HarmonicSeq HarmonicSeq::parse(std::string_view spec, int order_needed) {
  if (order_needed < 0) throw Error(Errc::Domain, "sequence order must be >= 0");
  constexpr std::string_view kPower = "power:";
  constexpr std::string_view kSeq = "seq:";
  if (spec.substr(0, kPower.size()) == kPower) {
    Rational center = Rational::from_string(spec.substr(kPower.size()));
    return power_sequence(center, order_needed);
  }
  if (spec.substr(0, kSeq.size()) == kSeq) {
    std::string_view body = spec.substr(kSeq.size());
    std::vector<RationalPoly> ps;
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t semi = body.find(';', pos);
      std::string_view tok = body.substr(
          pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
      ps.push_back(RationalPoly::from_string(tok));
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }
    HarmonicSeq seq(std::move(ps));
    seq.require_valid();
    if (seq.max_order() < order_needed)
      throw Error(Errc::Domain, "sequence order " + std::to_string(seq.max_order()) +
                                    " below required " + std::to_string(order_needed));
    return seq;
  }
  throw Error(Errc::Parse, "sequence spec must start with 'power:' or 'seq:'");
}

std::string HarmonicSeq::spec_string() const {
  std::ostringstream os;
  os << "seq:";
  for (size_t k = 0; k < polys_.size(); ++k) {
    if (k) os << ';';
    os << polys_[k].to_string();
  }
  return os.str();
}

const RationalPoly& HarmonicSeq::at(int k) const {
  if (k < 0 || k > max_order())
    throw Error(Errc::Domain, "sequence index " + std::to_string(k) + " out of range");
  return polys_[static_cast<size_t>(k)];
}

bool HarmonicSeq::is_valid() const {
  if (polys_[0] != RationalPoly::constant(Rational(1))) return false;
  for (size_t k = 1; k < polys_.size(); ++k) {
    if (polys_[k].degree() != static_cast<int>(k)) return false;
    if (polys_[k].derivative() != polys_[k - 1]) return false;
  }
  return true;
}

void HarmonicSeq::require_valid() const {
  if (polys_[0] != RationalPoly::constant(Rational(1)))
    throw Error(Errc::Domain, "harmonic sequence must start with P_0 = 1");
  for (size_t k = 1; k < polys_.size(); ++k) {
    if (polys_[k].degree() != static_cast<int>(k) ||
        polys_[k].derivative() != polys_[k - 1])
      throw Error(Errc::Domain,
                  "P_" + std::to_string(k) + "' does not reproduce P_" + std::to_string(k - 1));
  }
}

bool HarmonicSeq::is_symmetric(const Rational& a, const Rational& b) const {
  for (size_t k = 0; k < polys_.size(); ++k) {
    RationalPoly mirrored = polys_[k].reflect(a, b);
    if (k % 2 == 1) mirrored = -mirrored;
    if (mirrored != polys_[k]) return false;
  }
  return true;
}

HarmonicSeq HarmonicSeq::extended(int to, const Rational& a, const Rational& b) const {
  if (to <= max_order()) return *this;
  bool keep_symmetric = is_symmetric(a, b);
  Rational mid = (a + b) / Rational(2);
  std::vector<RationalPoly> ps = polys_;
  for (int k = max_order() + 1; k <= to; ++k) {
    RationalPoly anti = ps.back().antiderivative();
    if (keep_symmetric) anti -= RationalPoly::constant(anti.eval(mid));
    ps.push_back(std::move(anti));
  }
  return HarmonicSeq(std::move(ps));
}

double HarmonicSeq::norm(int k, double q, double a, double b) const {
  const RationalPoly& p = at(k);
  return oracle::lp_norm([&](double t) { return p.eval_d(t); }, q, a, b);
}

}  // namespace finkquad
