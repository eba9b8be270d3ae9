#pragma once

// Discretization of the suspension operator D_A = d/dt + A(t) on [-T, T]
// and of H1 = D^H D, H2 = D D^H.
//
// Two schemes are available:
//
//  * Box (default). D maps node values to midpoint values,
//      (D f)_{i+1/2} = (f_{i+1} - f_i)/h + (A(t_i) f_i + A(t_{i+1}) f_{i+1})/2,
//    which is second order and has no spurious low-energy mode. At t = -T the
//    trial space keeps only the nonpositive spectral subspace of A(-T), at
//    t = +T only the nonnegative subspace of A(+T); these are the boundary
//    conditions under which the truncated operator has the index of the path.
//
//  * Central. Square D = ddt (x) I + blockdiag(A(t_i)) with the antisymmetric
//    central-difference matrix. Its symbol vanishes at the band edge as well
//    as at zero momentum, and the doubled mode carries the opposite index, so
//    every trace gap of this scheme is zero. Kept for comparison.
//
// On a truncated axis tr(e^{-tH2}) - tr(e^{-tH1}) is exactly minus the
// discrete index for every t (the nonzero spectra of D^H D and D D^H agree).
// The infinite-line trace is recovered by the localized trace
// tr(chi e^{-tH2}) - tr(chi e^{-tH1}) with chi the indicator of [-W, W],
// W = window_fraction * T, which removes the boundary-localized modes. chi
// is sampled by cell overlap (a node whose cell straddles +-W gets the
// covered fraction) so that the window edge costs O(h^2) rather than O(h).

#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "ssflab/linalg.hpp"
#include "ssflab/models.hpp"

namespace ssflab {

namespace defaults {
inline constexpr double kHalfWidth = 12.0;
inline constexpr Index kPoints = 801;
inline constexpr double kWindowFraction = 0.6;
inline constexpr double kSaturationTolerance = 1e-8;
inline constexpr double kEndpointZeroTolerance = 1e-9;
inline constexpr double kHeatTimeMin = 0.25;
inline constexpr double kHeatTimeMax = 8.0;
inline constexpr Index kMaxSuspensionDimension = 8192;
}  // namespace defaults

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct TimeGrid {
  double half_width = 0.0;
  Index points = 0;
  double step = 0.0;
  std::vector<double> nodes;

  /// The grid with 2N-1 points on the same interval (h halved).
  TimeGrid refined() const;
};

/// Uniform grid t_i = -T + i h, h = 2T/(N-1). Requires N >= 3 odd.
TimeGrid make_grid(double half_width, Index points);

/// Central-difference matrix (f_{i+1} - f_{i-1}) / (2h) with values outside
/// [-T, T] taken as zero. Exactly antisymmetric.
RealMatrix build_ddt(const TimeGrid& grid);

/// (N-1) x N forward difference (f_{i+1} - f_i)/h, a second-order
/// derivative at the midpoints.
RealMatrix build_forward_difference(const TimeGrid& grid);

/// (N-1) x N midpoint average (f_i + f_{i+1})/2.
RealMatrix build_midpoint_average(const TimeGrid& grid);

enum class Scheme { Box, Central };

struct SuspensionOptions {
  Scheme scheme = Scheme::Box;
  double window_fraction = defaults::kWindowFraction;
  double saturation_tolerance = defaults::kSaturationTolerance;
  double endpoint_zero_tolerance = defaults::kEndpointZeroTolerance;
};

/// Eigenvalues of H1 or H2 with the window mass of each eigenvector.
struct LocalizedSpectrum {
  RealVector values;
  RealVector weights;
};

class SuspensionPair {
public:
  const TimeGrid& grid() const noexcept { return state_->grid; }
  const PerturbationPath& path() const noexcept { return state_->path; }
  const SuspensionOptions& options() const noexcept { return state_->options; }

  const SparseMatrix& d() const noexcept { return state_->d; }
  const HermitianOperator& h1() const noexcept { return state_->h1; }
  const HermitianOperator& h2() const noexcept { return state_->h2; }

  /// Time label of each trial basis vector (columns of D).
  const std::vector<double>& domain_times() const noexcept { return state_->domain_times; }
  /// Time label of each test basis vector (rows of D).
  const std::vector<double>& range_times() const noexcept { return state_->range_times; }

  double window_half_width() const noexcept { return state_->window; }
  const RealVector& domain_window() const noexcept { return state_->domain_window; }
  const RealVector& range_window() const noexcept { return state_->range_window; }

  /// dim(domain) - dim(range): the index of the truncated operator.
  Index discrete_index() const noexcept { return state_->d.cols() - state_->d.rows(); }

  const LocalizedSpectrum& local_h1() const;
  const LocalizedSpectrum& local_h2() const;

private:
  friend SuspensionPair assemble(const TimeGrid&, const PerturbationPath&,
                                 const SuspensionOptions&);

  struct State {
    State(TimeGrid g, PerturbationPath p, SuspensionOptions o)
        : grid(std::move(g)), path(std::move(p)), options(o) {}
    TimeGrid grid;
    PerturbationPath path;
    SuspensionOptions options;
    SparseMatrix d;
    HermitianOperator h1;
    HermitianOperator h2;
    std::vector<double> domain_times;
    std::vector<double> range_times;
    double window = 0.0;
    RealVector domain_window;
    RealVector range_window;
    std::once_flag local1_once;
    std::once_flag local2_once;
    LocalizedSpectrum local1;
    LocalizedSpectrum local2;
  };

  explicit SuspensionPair(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

/// Builds D, H1, H2. Throws ConfigError when theta is not saturated to
/// within the tolerance at t = -T or t = +T, or when N k exceeds the dense
/// dimension cap.
SuspensionPair assemble(const TimeGrid& grid, const PerturbationPath& path,
                        const SuspensionOptions& options = {});

/// Localized tr(e^{-tH2}) - tr(e^{-tH1}).
double heat_trace_gap(const SuspensionPair& pair, double t);

/// Unlocalized tr(e^{-tH2}) - tr(e^{-tH1}); equals -discrete_index() for the
/// box scheme and 0 for the central scheme, for every t.
double global_heat_trace_gap(const SuspensionPair& pair, double t);

/// Localized tr((H2 - z)^{-k} - (H1 - z)^{-k}) for real z < 0.
double resolvent_trace_gap(const SuspensionPair& pair, double z, int k);

/// Window mass of each column of `vectors` for the weights `chi`.
RealVector window_mass(const Matrix& vectors, const RealVector& chi);

/// Cell-overlap indicator weights of [-W, W] for points with spacing h.
RealVector cell_window(const std::vector<double>& points, double half_width, double h);

}  // namespace ssflab
