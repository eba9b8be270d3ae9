#pragma once

// Closed-form transforms of step functions: the Abel transform relating
// xi(.; A_+, A_-) to xi(.; H2, H1), the T_k smoothing, the Laplace-side
// consistency check and one-sided Lebesgue values.

#include <vector>

#include "ssflab/ssf.hpp"
#include "ssflab/suspension.hpp"

namespace ssflab {

namespace defaults {
inline constexpr double kWindowSpacings = 3.0;
inline constexpr double kLebesgueStart = 1.0;
inline constexpr int kLebesgueHalvings = 30;
inline constexpr double kLebesgueTolerance = 1e-12;
}  // namespace defaults

/// (1/pi) int_{-sqrt(lambda)}^{sqrt(lambda)} xi(nu) (lambda - nu^2)^{-1/2} d nu,
/// summed exactly as arcsin differences over the pieces of xi.
double pushnitski_abel(const StepFunction& xi_small, double lambda);

/// Reliable spectral window of a suspension grid: [(pi/T)^2, (pi/h)^2 / 4].
/// Below it the truncated axis has no resolved modes; above it the
/// difference stencil departs from the continuum dispersion.
struct LambdaWindow {
  double lo = 0.0;
  double hi = 0.0;
};
LambdaWindow lambda_window(const TimeGrid& grid);

/// xi(.; H2, H1) restricted to the time window [-W, W]: eigenvalue counts
/// weighted by window mass (the localized analogue of ssf_nonneg_pair).
StepFunction localized_ssf(const SuspensionPair& pair);

struct PushnitskiRow {
  double lambda = 0.0;
  double window = 0.0;     // width of the averaging window
  double discrete = 0.0;   // window average of the localized xi(.; H2, H1)
  double predicted = 0.0;  // pushnitski_abel(xi_small, lambda)
  double residual = 0.0;
};

/// Compares the discrete xi(.; H2, H1) averaged over 3 local eigenvalue
/// spacings with the Abel transform of xi_small. Throws ParameterError for
/// lambda outside lambda_window(grid) unless enforce_window is false.
std::vector<PushnitskiRow> pushnitski_verify(const SuspensionPair& pair,
                                             const StepFunction& xi_small,
                                             const std::vector<double>& lambda_grid,
                                             bool enforce_window = true);

/// k lambda^k int_0^inf (nu + lambda)^{-k-1} f(nu) d nu, exact for step f.
/// Normalized so that constants are fixed points.
double t_k_apply(const StepFunction& f, int k, double lambda);

struct LaplaceRow {
  double t = 0.0;
  double discrete = 0.0;   // -heat_trace_gap(t) / t
  double continuum = 0.0;  // (pi t)^{-1/2} int xi_small(s) e^{-t s^2} ds
  double residual = 0.0;
};

/// (pi t)^{-1/2} int xi(s) e^{-t s^2} ds in closed form (erf differences).
double gaussian_moment(const StepFunction& xi_small, double t);

std::vector<LaplaceRow> laplace_consistency(const SuspensionPair& pair,
                                            const StepFunction& xi_small,
                                            const std::vector<double>& t_grid,
                                            double t_min = defaults::kHeatTimeMin,
                                            double t_max = defaults::kHeatTimeMax);

enum class Side { Left, Right };

struct LebesguePointReport {
  Side side = Side::Right;
  double value = 0.0;
  std::vector<std::pair<double, double>> windows;  // (h, average)
  bool converged = false;
};

/// One-sided window averages (1/h) int over (x, x+h) or (x-h, x) for
/// h = h0, h0/2, ...; converged when the last three agree within tolerance.
LebesguePointReport lebesgue_point(const StepFunction& f, double x, Side side,
                                   double h0 = defaults::kLebesgueStart,
                                   int halvings = defaults::kLebesgueHalvings,
                                   double tolerance = defaults::kLebesgueTolerance);

}  // namespace ssflab
