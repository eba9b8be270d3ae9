#pragma once

// Dirac operators gamma . grad + m gamma_0 on a periodic box, discretized
// exactly in the Fourier basis, with matrix potentials and the refinement
// diagnostics for the relative trace-class hypotheses.
//
// Basis ordering: index = mode * n(d) + spinor, modes in row-major order of
// the momentum multi-index kappa = (2 pi / L) (i - (M-1)/2), i in [0, M)^d.
// A potential V(x) is sampled on x_j = (j - (M-1)/2) L / M and moved to the
// Fourier basis as F V F^H with the unitary DFT F.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssflab/linalg.hpp"

namespace ssflab {

namespace defaults {
inline constexpr int kCliffordMaxDimension = 8;
inline constexpr Index kDiracMaxDimension = 4096;
inline constexpr double kStableRatioLow = 0.8;
inline constexpr double kStableRatioHigh = 1.25;
inline constexpr double kGrowthFactor = 2.0;
inline constexpr int kL1L2Order = 16;
}  // namespace defaults

/// gammas[0] = gamma_0 (the mass matrix), gammas[k] = gamma_k for k = 1..d.
struct CliffordSet {
  int d = 0;
  Index size = 0;
  std::vector<Matrix> gammas;
};

/// Hermitian anticommuting involutions of size 2^{ceil(d/2)}, 1 <= d <= 8.
CliffordSet clifford(int d);

/// True when gamma_k^H = gamma_k, gamma_k^2 = I and gamma_j gamma_k = -gamma_k gamma_j
/// hold entrywise without rounding (entries are 0, +-1, +-i).
bool clifford_relations_exact(const CliffordSet& set);

/// x -> V(x), an n(d) x n(d) Hermitian matrix.
using PotentialFn = std::function<Matrix(const std::vector<double>&)>;

struct DiracModel {
  int d = 1;
  double mass = 0.0;
  double box = 0.0;
  Index modes = 0;
  CliffordSet clifford;
  std::vector<std::vector<double>> momenta;    // one per mode
  std::vector<std::vector<double>> positions;  // one per spatial sample
  HermitianOperator free;                      // exact symbol gamma . kappa + m gamma_0
  std::optional<HermitianOperator> potential;  // V in the Fourier basis
  PotentialFn potential_fn;                    // kept for rebuilding at other resolutions

  Index dim() const noexcept { return free.dim(); }
  /// free + potential.
  HermitianOperator total() const;
};

/// Throws ParameterError for even or small M, or when n(d) M^d exceeds the
/// dimension cap; ContractError when a potential sample is not Hermitian.
DiracModel build_dirac(int d, double mass, double box, Index modes,
                       const PotentialFn& potential = {});

/// Closed-form free spectrum +-sqrt(|kappa|^2 + m^2), n(d)/2 copies per sign, ascending.
RealVector free_dirac_spectrum(int d, double mass, double box, Index modes);

/// identity (x) gamma_0 in the model basis; anticommutes with the free operator at m = 0.
Matrix chiral_operator(const DiracModel& model);

/// Catalog: "zero", "gaussian" (a e^{-|x|^2/w^2} I), "sharp" (a 1{|x|_inf <= w} I),
/// "magnetic" (d = 3 only: sum_j a_j(x) gamma_j with a(x) = a e^{-|x|^2/w^2} (-x_2, x_1, 0)).
PotentialFn make_potential(const std::string& name, const CliffordSet& set, double amplitude,
                           double width);

struct L1L2Report {
  double value = 0.0;
  double tail = 0.0;
  Index cubes = 0;
};

/// sum over n in {-R..R}^d of ||f chi_{Q+n}||_2, Q = [-1/2, 1/2)^d, by tensor
/// Gauss-Legendre of the given order per axis. Without a tail bound the
/// outermost shell must be negligible (it is then reported as the tail);
/// otherwise ContractError.
L1L2Report l1l2_norm(const std::function<double(const std::vector<double>&)>& f, int d,
                     int radius, int order = defaults::kL1L2Order,
                     std::optional<double> tail_bound = std::nullopt);

struct HypothesisReport {
  int p = 1;
  Index coarse_modes = 0;
  Index fine_modes = 0;
  // j = 1..p+1: ||V (D + i)^{-j}||_{(p+1)/j}
  std::vector<double> schatten_coarse;
  std::vector<double> schatten_fine;
  std::vector<double> schatten_ratio;
  // k = 1..2p: ||(1 + D^2)^{-k/2} [D^2, V]^{(k)}||
  std::vector<double> commutator_coarse;
  std::vector<double> commutator_fine;
  std::vector<double> commutator_ratio;

  bool schatten_stable(double lo = defaults::kStableRatioLow,
                       double hi = defaults::kStableRatioHigh) const;
};

/// Evaluates the Schatten profile and repeated-commutator norms at M and
/// 2M+1 modes. A finite matrix is always trace class, so only the ratio
/// between resolutions carries information.
HypothesisReport hypothesis_diagnostics(const DiracModel& model, int p);

}  // namespace ssflab
