#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "finkquad/oracle.hpp"
#include "finkquad/poly.hpp"
#include "finkquad/rational.hpp"

using finkquad::Error;
using finkquad::Rational;
using finkquad::RationalPoly;
namespace oracle = finkquad::oracle;

TEST_CASE("random polynomials integrate to their exact values") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int d = deg(rng);
    std::vector<Rational> cs;
    for (int k = 0; k <= d; ++k) cs.push_back(Rational::from_double(coeff(rng)));
    RationalPoly p(cs);
    auto g = [&p](double t) { return p.eval_d(t); };
    double got = oracle::integrate_adaptive(g, 0.0, 1.0).value;
    double expect = p.integrate(Rational(0), Rational(1)).to_double();
    CHECK(std::fabs(got - expect) < 1e-12);
  }
}

TEST_CASE("closed-form integrals of the transcendental catalog") {
  auto e = [](double t) { return std::exp(t); };
  CHECK(oracle::integrate_adaptive(e, 0.0, 1.0).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  auto s = [](double t) { return std::sin(3.0 * t); };
  CHECK(oracle::integrate_adaptive(s, 0.0, 2.0).value ==
        doctest::Approx((1.0 - std::cos(6.0)) / 3.0).epsilon(1e-12));
}

TEST_CASE("breakpoints split the panel without changing the value") {
  auto g = [](double t) { return std::exp(t) * std::sin(5.0 * t); };
  double plain = oracle::integrate_adaptive(g, 0.0, 1.0).value;
  std::vector<double> bp = {0.3, 0.7};
  double split = oracle::integrate_adaptive(g, 0.0, 1.0, oracle::kDefaultTol, bp).value;
  CHECK(plain == doctest::Approx(split).epsilon(1e-12));

  // A kink integrand needs its breakpoint to converge tightly.
  auto kink = [](double t) { return std::fabs(t - 0.5); };
  std::vector<double> kb = {0.5};
  CHECK(oracle::integrate_adaptive(kink, 0.0, 1.0, 1e-14, kb).value ==
        doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("error estimate brackets the true error on smooth integrands") {
  auto g = [](double t) { return std::cos(10.0 * t); };
  oracle::QuadResult r = oracle::integrate_adaptive(g, 0.0, 1.0, 1e-10);
  double truth = std::sin(10.0) / 10.0;
  CHECK(std::fabs(r.value - truth) <= std::max(r.abs_error_estimate, 1e-12));
  CHECK(r.evaluations > 0);
}

TEST_CASE("lp norms against hand values") {
  const double inf = std::numeric_limits<double>::infinity();
  auto id = [](double t) { return t; };
  CHECK(oracle::lp_norm(id, 1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(oracle::lp_norm(id, 2.0, 0.0, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(oracle::lp_norm(id, inf, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // Sign changes do not leak into |g|^p.
  auto odd = [](double t) { return t - 0.5; };
  CHECK(oracle::lp_norm(odd, 1.0, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("sup refinement locates interior extrema") {
  auto hump = [](double t) { return t * (1.0 - t); };
  CHECK(oracle::sup_on_interval(hump, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-10));
  auto wave = [](double t) { return std::sin(M_PI * t); };
  CHECK(oracle::sup_on_interval(wave, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Supremum of g itself, not |g|: a negative function has a negative sup.
  auto neg = [](double t) { return -1.0 - t * t; };
  CHECK(oracle::sup_on_interval(neg, 0.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("convergence order fit recovers synthetic slopes") {
  std::vector<std::pair<long, double>> quad = {
      {4, 1.0 / 16}, {8, 1.0 / 64}, {16, 1.0 / 256}, {32, 1.0 / 1024}};
  oracle::OrderFit fit = oracle::convergence_order(quad);
  CHECK(!fit.exact);
  CHECK(fit.excluded == 0);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<std::pair<long, double>> zero = {{4, 0.0}, {8, 0.0}, {16, 0.0}};
  oracle::OrderFit zfit = oracle::convergence_order(zero);
  CHECK(zfit.exact);
  CHECK(zfit.excluded == 3);

  std::vector<std::pair<long, double>> mixed = {
      {4, 1.0 / 16}, {8, 0.0}, {16, 1.0 / 256}, {32, 1.0 / 1024}};
  oracle::OrderFit mfit = oracle::convergence_order(mixed);
  CHECK(!mfit.exact);
  CHECK(mfit.excluded == 1);
  CHECK(mfit.slope == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<std::pair<long, double>> short_list = {{4, 0.1}, {8, 0.05}};
  CHECK_THROWS_AS(oracle::convergence_order(short_list), Error);
}

TEST_CASE("divergent integrands surface the depth cap") {
  auto div = [](double t) { return 1.0 / t; };
  CHECK_THROWS_AS(oracle::integrate_adaptive(div, 0.0, 1.0, 1e-10), Error);
}
