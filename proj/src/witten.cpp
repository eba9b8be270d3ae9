#include "ssflab/witten.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssflab/transforms.hpp"

namespace ssflab {

namespace {

bool arithmetic(const std::vector<double>& x) {
  if (x.size() < 3) return false;
  const double d = x[1] - x[0];
  for (std::size_t i = 2; i < x.size(); ++i)
    if (std::abs((x[i] - x[i - 1]) - d) > 1e-12 * std::max(1.0, std::abs(d))) return false;
  return true;
}

// Monotone tail: the last two increments do not change sign.
bool monotone_tail(const std::vector<std::pair<double, double>>& tr, double slack) {
  if (tr.size() < 3) return true;
  const std::size_t n = tr.size();
  const double d1 = tr[n - 2].second - tr[n - 3].second;
  const double d2 = tr[n - 1].second - tr[n - 2].second;
  return d1 * d2 >= 0.0 || std::abs(d2) <= slack;
}

int kernel_count(const HermitianOperator& h, double threshold) {
  return static_cast<int>(count_below(h.eigenvalues(), threshold));
}

}  // namespace

LimitEstimate witten_semigroup(const SuspensionPair& pair, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw ParameterError("witten_semigroup: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw ParameterError("witten_semigroup: t must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw ParameterError("witten_semigroup: t grid must be increasing");
  }
  LimitEstimate out;
  for (double t : t_grid) out.trace.emplace_back(t, -heat_trace_gap(pair, t));
  const std::size_t n = out.trace.size();
  out.value = out.trace.back().second;
  out.method = "last";
  if (arithmetic(t_grid)) {
    const double a = out.trace[n - 3].second;
    const double b = out.trace[n - 2].second;
    const double c = out.trace[n - 1].second;
    const double d1 = b - a;
    const double d2 = c - b;
    const double denom = d2 - d1;
    if (d1 != 0.0 && d2 / d1 > 0.0 && d2 / d1 < 1.0 && denom != 0.0) {
      out.value = c - d2 * d2 / denom;
      out.method = "aitken";
    }
  }
  out.converged = monotone_tail(out.trace, defaults::kIndexTolerance);
  return out;
}

LimitEstimate witten_resolvent(const SuspensionPair& pair, int k,
                               const std::vector<double>& lambda_grid) {
  if (k < 1) throw ParameterError("witten_resolvent: k must be positive");
  if (lambda_grid.empty()) throw ParameterError("witten_resolvent: empty lambda grid");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] < 0.0)) throw ParameterError("witten_resolvent: lambda must be negative");
    if (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1]))
      throw ParameterError("witten_resolvent: lambda grid must increase towards 0");
  }
  LimitEstimate out;
  for (double lam : lambda_grid)
    out.trace.emplace_back(lam, -std::pow(-lam, k) * resolvent_trace_gap(pair, lam, k));
  const std::size_t n = out.trace.size();
  out.value = out.trace.back().second;
  out.method = "last";
  if (n >= 2) {
    const double lp = std::abs(out.trace[n - 2].first);
    const double ll = std::abs(out.trace[n - 1].first);
    const double vp = out.trace[n - 2].second;
    const double vl = out.trace[n - 1].second;
    out.value = (lp * vl - ll * vp) / (lp - ll);
    out.method = "richardson";
  }
  out.converged = monotone_tail(out.trace, defaults::kIndexTolerance);
  return out;
}

double endpoint_gap(const PerturbationPath& path) {
  const RealVector& em = path.a_minus.eigenvalues();
  const HermitianOperator a_plus = path.a_plus();
  const RealVector& ep = a_plus.eigenvalues();
  return std::min(em.cwiseAbs().minCoeff(), ep.cwiseAbs().minCoeff());
}

int spectral_flow(const PerturbationPath& path, int samples) {
  if (samples < 2) throw ParameterError("spectral_flow: at least 2 samples are required");
  const double gap = endpoint_gap(path);
  if (!(gap > defaults::kEndpointGapTolerance)) {
    std::ostringstream os;
    os << "spectral_flow: an endpoint has an eigenvalue within " << gap
       << " of 0; use the spectral shift prediction instead";
    throw ContractError(os.str());
  }
  const bool real = path.a_minus.is_real() && path.b_plus.is_real();
  for (int n = samples; n <= defaults::kFlowMaxSamples; n = 2 * n - 1) {
    std::vector<RealVector> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / (n - 1);
      ev[static_cast<std::size_t>(i)] =
          eigh_uncached(path.straight_line(s).matrix(), real, false).values;
    }
    double max_move = 0.0;
    for (int i = 1; i < n; ++i)
      max_move = std::max(max_move, (ev[static_cast<std::size_t>(i)] -
                                     ev[static_cast<std::size_t>(i - 1)]).cwiseAbs().maxCoeff());
    if (max_move > 0.5 * gap && 2 * n - 1 <= defaults::kFlowMaxSamples) continue;
    int flow = 0;
    for (int i = 1; i < n; ++i) {
      const RealVector& a = ev[static_cast<std::size_t>(i - 1)];
      const RealVector& b = ev[static_cast<std::size_t>(i)];
      flow += static_cast<int>(count_below(a, 0.0) - count_below(b, 0.0));
    }
    return flow;
  }
  throw ConvergenceError("spectral_flow: sample grid did not resolve the eigenvalue motion", 0);
}

FredholmResult fredholm_index(const SuspensionPair& pair, double gap_tolerance) {
  FredholmResult out;
  const double gap = endpoint_gap(pair.path());
  if (!(gap > gap_tolerance)) {
    std::ostringstream os;
    os << "0 is within " << gap << " of the endpoint spectra: not Fredholm";
    out.diagnostic = os.str();
    return out;
  }
  const double thr = (gap / 4.0) * (gap / 4.0);
  out.coarse_count = kernel_count(pair.h1(), thr) - kernel_count(pair.h2(), thr);
  const SuspensionPair fine = assemble(pair.grid().refined(), pair.path(), pair.options());
  out.fine_count = kernel_count(fine.h1(), thr) - kernel_count(fine.h2(), thr);
  if (out.coarse_count != out.fine_count) {
    std::ostringstream os;
    os << "numerical kernel count changed under refinement (" << out.coarse_count << " -> "
       << out.fine_count << ")";
    out.diagnostic = os.str();
    return out;
  }
  out.index = out.coarse_count;
  out.diagnostic = "stable under refinement";
  return out;
}

bool IndexReport::consistent(double tolerance) const {
  std::vector<double> q{w_s.value, ssf_prediction};
  for (const auto& kv : w_kr) q.push_back(kv.second.value);
  if (spectral_flow) q.push_back(*spectral_flow);
  if (fredholm.index) q.push_back(*fredholm.index);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (!(std::abs(q[i] - q[j]) <= tolerance)) return false;
  return true;
}

IndexReport index_report(const IndexConfig& config) {
  IndexReport r;
  r.gap = endpoint_gap(config.path);
  r.gapped_endpoints = r.gap > config.gap_tolerance;
  const SuspensionPair pair = assemble(config.grid, config.path, config.options);
  std::vector<double> t_grid = config.t_grid;
  std::vector<double> lambda_grid = config.lambda_grid;
  if (config.scale_by_gap && r.gapped_endpoints && r.gap < 1.0) {
    const double g2 = r.gap * r.gap;
    for (double& t : t_grid) t /= g2;
    for (double& l : lambda_grid) l *= g2;
  }
  r.w_s = witten_semigroup(pair, t_grid);
  for (int k : config.k_values) r.w_kr[k] = witten_resolvent(pair, k, lambda_grid);
  if (r.gapped_endpoints) r.spectral_flow = spectral_flow(config.path, config.flow_samples);
  r.fredholm = fredholm_index(pair, config.gap_tolerance);
  const StepFunction xi = ssf_pair(config.path.a_plus(), config.path.a_minus);
  r.ssf_right = lebesgue_point(xi, 0.0, Side::Right).value;
  r.ssf_left = lebesgue_point(xi, 0.0, Side::Left).value;
  r.ssf_prediction = 0.5 * (r.ssf_right + r.ssf_left);
  return r;
}

}  // namespace ssflab
