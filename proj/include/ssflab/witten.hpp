#pragma once

// Witten-index regularizations of the suspension operator and the integer
// invariants they are compared with.
//
// Sign convention: W_s and W_{k,r} put T^*T = H1 FIRST,
//   W_s     = lim_{t -> inf}  tr(e^{-t H1} - e^{-t H2})          = -heat_trace_gap
//   W_{k,r} = lim_{l -> 0-}  (-l)^k tr((H1 - l)^{-k} - (H2 - l)^{-k})
// whereas the principal trace formula is written with H2 first.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssflab/models.hpp"
#include "ssflab/ssf.hpp"
#include "ssflab/suspension.hpp"

namespace ssflab {

namespace defaults {
inline constexpr double kIndexTolerance = 2e-2;
inline constexpr double kEndpointGapTolerance = 1e-6;
inline constexpr int kFlowSamples = 65;
inline constexpr int kFlowMaxSamples = 1 << 14;
}  // namespace defaults

struct LimitEstimate {
  double value = 0.0;
  std::vector<std::pair<double, double>> trace;  // (t or lambda, raw value)
  bool converged = true;
  std::string method;  // "last", "aitken" or "richardson"
};

/// tr(e^{-tH1} - e^{-tH2}) along t_grid, extrapolated with Aitken's process
/// when the grid is arithmetic and the tail geometric; otherwise the last value.
LimitEstimate witten_semigroup(const SuspensionPair& pair, const std::vector<double>& t_grid);

/// (-l)^k tr((H1 - l)^{-k} - (H2 - l)^{-k}) along lambda_grid (negative,
/// increasing), extrapolated to 0 linearly in |l| from the last two points.
LimitEstimate witten_resolvent(const SuspensionPair& pair, int k,
                               const std::vector<double>& lambda_grid);

/// Smallest |eigenvalue| of A_- and of A_+.
double endpoint_gap(const PerturbationPath& path);

/// Net number of eigenvalues of A_- + s B_+ crossing 0 upward for s in [0, 1].
/// The sample grid is doubled until no eigenvalue moves by more than half the
/// endpoint gap between neighbours. ContractError for a singular endpoint.
int spectral_flow(const PerturbationPath& path, int samples = defaults::kFlowSamples);

struct FredholmResult {
  std::optional<int> index;
  std::string diagnostic;
  int coarse_count = 0;  // ker_num(D) - ker_num(D^H) at N
  int fine_count = 0;    // same at 2N-1
};

/// dim ker_num(D) - dim ker_num(D^H) with singular values below gap/4 counted
/// as kernel, checked at N and 2N-1. Absent when an endpoint is not gapped or
/// the count changes under refinement.
FredholmResult fredholm_index(const SuspensionPair& pair,
                              double gap_tolerance = defaults::kEndpointGapTolerance);

struct IndexConfig {
  PerturbationPath path;
  TimeGrid grid;
  SuspensionOptions options;
  std::vector<double> t_grid{1.0, 2.0, 4.0};
  std::vector<double> lambda_grid{-0.2, -0.1, -0.05};
  std::vector<int> k_values{1, 2};
  // With gapped endpoints and gap g < 1 the limits converge like erf(g sqrt(t)),
  // so t_grid is divided and lambda_grid multiplied by g^2.
  bool scale_by_gap = true;
  int flow_samples = defaults::kFlowSamples;
  double tolerance = defaults::kIndexTolerance;
  double gap_tolerance = defaults::kEndpointGapTolerance;
};

struct IndexReport {
  LimitEstimate w_s;
  std::map<int, LimitEstimate> w_kr;
  std::optional<int> spectral_flow;
  FredholmResult fredholm;
  double ssf_prediction = 0.0;
  double ssf_right = 0.0;  // xi_L(0+; A_+, A_-)
  double ssf_left = 0.0;   // xi_L(0-; A_+, A_-)
  bool gapped_endpoints = false;
  double gap = 0.0;

  /// Pairwise agreement of every present quantity within `tolerance`.
  bool consistent(double tolerance) const;
};

IndexReport index_report(const IndexConfig& config);

}  // namespace ssflab
