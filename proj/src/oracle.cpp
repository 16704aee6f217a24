#include "finkquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finkquad {
namespace oracle {

namespace {

// 15-point Kronrod extension of 7-point Gauss (abscissae/weights on [-1,1]).
// G7 uses the odd-index abscissae plus the center.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
  double value;
  double err;
};

PanelEval gk15(const std::function<double(double)>& g, double lo, double hi, long& evals) {
  const double hl = 0.5 * (hi - lo);
  const double c = 0.5 * (lo + hi);
  double fv[15];
  const double fc = g(c);
  evals += 15;
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  fv[14] = fc;
  for (int j = 0; j < 7; ++j) {
    const double absc = hl * kXgk[j];
    const double f1 = g(c - absc);
    const double f2 = g(c + absc);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[2 * j] - reskh) + std::fabs(fv[2 * j + 1] - reskh));
  resasc *= std::fabs(hl);

  double err = std::fabs((resk - resg) * hl);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {resk * hl, err};
}

void integrate_panel(const std::function<double(double)>& g, double lo, double hi,
                     double tol_share, int depth, QuadResult& acc) {
  PanelEval pe = gk15(g, lo, hi, acc.evaluations);
  // Roundoff floor: below ~50 eps of panel mass the estimate cannot shrink.
  const double floor =
      50.0 * std::numeric_limits<double>::epsilon() * (std::fabs(pe.value) + 1e-300);
  if (pe.err <= tol_share || pe.err <= floor) {
    acc.value += pe.value;
    acc.abs_error_estimate += pe.err;
    return;
  }
  if (depth >= kMaxDepth)
    throw Error(Errc::MaxDepth, "tolerance unreachable after 60 bisection levels");
  const double mid = 0.5 * (lo + hi);
  integrate_panel(g, lo, mid, 0.5 * tol_share, depth + 1, acc);
  integrate_panel(g, mid, hi, 0.5 * tol_share, depth + 1, acc);
}

// Interior breakpoints sorted, deduplicated, clipped to (a,b); returns the
// piece boundaries including the endpoints.
std::vector<double> piece_edges(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> edges = {a};
  std::vector<double> ins(breakpoints.begin(), breakpoints.end());
  std::sort(ins.begin(), ins.end());
  for (double p : ins)
    if (p > a && p < b && p != edges.back()) edges.push_back(p);
  edges.push_back(b);
  return edges;
}

// Golden-section search for the maximum of g on [lo, hi].
double golden_max(const std::function<double(double)>& g, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::fabs(lo) + std::fabs(hi));
       ++it) {
    if (gc < gd) {
      lo = c;
      c = d;
      gc = gd;
      d = lo + kInvPhi * (hi - lo);
      gd = g(d);
    } else {
      hi = d;
      d = c;
      gd = gc;
      c = hi - kInvPhi * (hi - lo);
      gc = g(c);
    }
  }
  return std::max(gc, gd);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                              double tol, std::span<const double> breakpoints) {
  if (!(tol > 0.0)) throw Error(Errc::Domain, "tolerance must be positive");
  if (a == b) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  auto edges = piece_edges(a, b, breakpoints);
  QuadResult acc;
  const double total = b - a;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double share = tol * (edges[i + 1] - edges[i]) / total;
    integrate_panel(g, edges[i], edges[i + 1], share, 0, acc);
  }
  acc.value *= sign;
  return acc;
}

double sup_on_interval(const std::function<double(double)>& g, double a, double b,
                       std::span<const double> breakpoints) {
  if (a > b) std::swap(a, b);
  if (a == b) return g(a);
  auto edges = piece_edges(a, b, breakpoints);
  double best = -std::numeric_limits<double>::infinity();
  constexpr int kGrid = 4097;
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    const double h = (hi - lo) / (kGrid - 1);
    std::vector<double> vals(kGrid);
    int best_i = 0;
    for (int i = 0; i < kGrid; ++i) {
      vals[i] = g(lo + i * h);
      if (vals[i] > vals[best_i]) best_i = i;
      best = std::max(best, vals[i]);
    }
    // Refine around the three best grid cells (they may straddle distinct
    // local maxima of a piecewise-polynomial integrand).
    std::vector<int> order(kGrid);
    for (int i = 0; i < kGrid; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](int i, int j) { return vals[i] > vals[j]; });
    for (int k = 0; k < 3; ++k) {
      const int i = order[k];
      const double rl = lo + std::max(0, i - 1) * h;
      const double rh = lo + std::min(kGrid - 1, i + 1) * h;
      best = std::max(best, golden_max(g, rl, rh));
    }
  }
  return best;
}

double lp_norm(const std::function<double(double)>& g, double p, double a, double b,
               double tol, std::span<const double> breakpoints) {
  if (std::isinf(p))
    return sup_on_interval([&](double t) { return std::fabs(g(t)); }, a, b, breakpoints);
  if (!(p >= 1.0)) throw Error(Errc::Domain, "lp_norm needs p in [1, inf]");
  auto integrand = [&](double t) { return std::pow(std::fabs(g(t)), p); };
  QuadResult r = integrate_adaptive(integrand, a, b, tol, breakpoints);
  return std::pow(r.value, 1.0 / p);
}

OrderFit convergence_order(std::span<const std::pair<long, double>> samples) {
  if (samples.size() < 3)
    throw Error(Errc::Degenerate, "convergence fit needs at least 3 samples");
  OrderFit fit;
  std::vector<std::pair<double, double>> pts;  // (log h, log err)
  for (const auto& [panels, err] : samples) {
    if (panels <= 0) throw Error(Errc::Domain, "panel count must be positive");
    if (!(err > 0.0) || !std::isfinite(std::log(err))) {
      ++fit.excluded;
      continue;
    }
    pts.emplace_back(std::log(1.0 / static_cast<double>(panels)), std::log(err));
  }
  if (pts.empty()) {
    fit.exact = true;  // rule is exact on this integrand at every panel count
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  if (pts.size() < 2)
    throw Error(Errc::Degenerate, "too few nonzero errors for a convergence fit");
  double mx = 0, my = 0;
  for (auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw Error(Errc::Degenerate, "all samples share one panel count");
  fit.slope = sxy / sxx;
  return fit;
}

}  // namespace oracle
}  // namespace finkquad
