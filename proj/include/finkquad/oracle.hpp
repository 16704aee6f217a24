#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "finkquad/error.hpp"

namespace finkquad {
namespace oracle {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kMaxDepth = 60;

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

// Adaptive bisection over an embedded 7/15-point Gauss-Kronrod pair. The
// interval is pre-split at the given interior breakpoints (kernel junctions),
// since the integrands are only piecewise smooth there. Throws MAX_DEPTH if a
// panel cannot meet its share of the tolerance within 60 bisection levels.
QuadResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                              double tol = kDefaultTol,
                              std::span<const double> breakpoints = {});

// (integral |g|^p)^(1/p) for p in [1, inf); p = inf delegates to the sup of
// |g|. Pass std::numeric_limits<double>::infinity() for the sup norm.
double lp_norm(const std::function<double(double)>& g, double p, double a, double b,
               double tol = kDefaultTol, std::span<const double> breakpoints = {});

// Supremum of g itself (callers wanting sup|g| pass the absolute value).
// Dense 4097-point grid per smooth piece, golden-section refinement around the
// best three grid cells.
double sup_on_interval(const std::function<double(double)>& g, double a, double b,
                       std::span<const double> breakpoints = {});

struct OrderFit {
  double slope = 0.0;   // least-squares slope of log|error| vs log(panel width)
  bool exact = false;   // every sample was (numerically) zero error
  int excluded = 0;     // zero-error samples dropped from the fit
};

// Samples are (panel_count, |error|). Needs >= 3 samples; zero errors are
// excluded (an exact rule sets `exact` instead). Throws DEGENERATE when fewer
// than two usable samples remain and the rule is not exact.
OrderFit convergence_order(std::span<const std::pair<long, double>> samples);

}  // namespace oracle
}  // namespace finkquad
