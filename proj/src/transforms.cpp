#include "ssflab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ssflab {

double pushnitski_abel(const StepFunction& xi_small, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("pushnitski_abel: lambda must be positive");
  const double r = std::sqrt(lambda);
  // nu = sqrt(lambda) sin(phi) turns the kernel into d phi / pi.
  const auto phi = [r](double x) {
    if (x <= -r) return -std::numbers::pi / 2;
    if (x >= r) return std::numbers::pi / 2;
    return std::asin(x / r);
  };
  return xi_small.integrate_antiderivative(phi) / std::numbers::pi;
}

LambdaWindow lambda_window(const TimeGrid& grid) {
  const double pi = std::numbers::pi;
  return {(pi / grid.half_width) * (pi / grid.half_width),
          (pi / grid.step) * (pi / grid.step) / 4.0};
}

StepFunction localized_ssf(const SuspensionPair& pair) {
  const LocalizedSpectrum& s1 = pair.local_h1();
  const LocalizedSpectrum& s2 = pair.local_h2();
  return ssf_weighted(s2.values.cwiseMax(0.0), s2.weights, s1.values.cwiseMax(0.0), s1.weights);
}

std::vector<PushnitskiRow> pushnitski_verify(const SuspensionPair& pair,
                                             const StepFunction& xi_small,
                                             const std::vector<double>& lambda_grid,
                                             bool enforce_window) {
  const LambdaWindow win = lambda_window(pair.grid());
  if (enforce_window) {
    for (double lam : lambda_grid) {
      if (!(lam >= win.lo && lam <= win.hi)) {
        std::ostringstream os;
        os << "lambda = " << lam << " is outside the reliable window [" << win.lo << ", "
           << win.hi << "] of this grid";
        throw ParameterError(os.str());
      }
    }
  }
  const StepFunction xi = localized_ssf(pair);
  const RealVector& ev = pair.local_h2().values;
  const Index n = ev.size();
  std::vector<PushnitskiRow> rows;
  for (double lam : lambda_grid) {
    PushnitskiRow row;
    row.lambda = lam;
    const Index j = std::clamp<Index>(
        static_cast<Index>(std::lower_bound(ev.data(), ev.data() + n, lam) - ev.data()), 1, n - 2);
    const double spacing = 0.5 * (ev(j + 1) - ev(j - 1));
    row.window = defaults::kWindowSpacings * spacing;
    row.discrete = xi.integral(lam - row.window / 2, lam + row.window / 2) / row.window;
    row.predicted = pushnitski_abel(xi_small, lam);
    row.residual = std::abs(row.discrete - row.predicted);
    rows.push_back(row);
  }
  return rows;
}

double t_k_apply(const StepFunction& f, int k, double lambda) {
  if (k < 1) throw ParameterError("t_k_apply: k must be positive");
  if (!(lambda > 0.0)) throw ParameterError("t_k_apply: lambda must be positive");
  // Antiderivative of k lambda^k (nu + lambda)^{-k-1} on [0, inf).
  const auto g = [k, lambda](double nu) {
    if (nu <= 0.0) return -1.0;
    if (std::isinf(nu)) return 0.0;
    return -std::pow(lambda / (nu + lambda), k);
  };
  return f.integrate_antiderivative(g);
}

double gaussian_moment(const StepFunction& xi_small, double t) {
  if (!(t > 0.0)) throw ParameterError("gaussian_moment: t must be positive");
  const double st = std::sqrt(t);
  return xi_small.integrate_antiderivative([st](double x) { return std::erf(st * x); }) /
         (2.0 * t);
}

std::vector<LaplaceRow> laplace_consistency(const SuspensionPair& pair,
                                            const StepFunction& xi_small,
                                            const std::vector<double>& t_grid, double t_min,
                                            double t_max) {
  std::vector<LaplaceRow> rows;
  for (double t : t_grid) {
    if (!(t >= t_min && t <= t_max)) {
      std::ostringstream os;
      os << "t = " << t << " is outside the validity window [" << t_min << ", " << t_max << "]";
      throw ParameterError(os.str());
    }
    LaplaceRow row;
    row.t = t;
    row.discrete = -heat_trace_gap(pair, t) / t;
    row.continuum = gaussian_moment(xi_small, t);
    row.residual = std::abs(row.discrete - row.continuum);
    rows.push_back(row);
  }
  return rows;
}

LebesguePointReport lebesgue_point(const StepFunction& f, double x, Side side, double h0,
                                   int halvings, double tolerance) {
  if (!(h0 > 0.0)) throw ParameterError("lebesgue_point: h0 must be positive");
  if (halvings < 3) throw ParameterError("lebesgue_point: at least 3 windows are required");
  LebesguePointReport r;
  r.side = side;
  double h = h0;
  for (int i = 0; i < halvings; ++i, h *= 0.5) {
    const double avg = side == Side::Right ? f.integral(x, x + h) / h : f.integral(x - h, x) / h;
    r.windows.emplace_back(h, avg);
  }
  const std::size_t m = r.windows.size();
  const double a = r.windows[m - 3].second;
  const double b = r.windows[m - 2].second;
  const double c = r.windows[m - 1].second;
  r.converged = std::abs(a - b) <= tolerance && std::abs(b - c) <= tolerance &&
                std::abs(a - c) <= tolerance;
  r.value = c;
  return r;
}

}  // namespace ssflab
