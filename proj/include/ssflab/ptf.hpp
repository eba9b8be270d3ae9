#pragma once

// Both sides of the principal trace formula
//
//   tr(e^{-tH2} - e^{-tH1}) = -(t/pi)^{1/2} int_0^1 tr(e^{-t A_s^2} B_+) ds
//                           = -1/2 tr(erf(t^{1/2} A_+) - erf(t^{1/2} A_-)),
//
// A_s = A_- + s B_+. The last equality is exact in finite dimension and is
// the internal oracle for the quadrature.

#include <optional>
#include <vector>

#include "ssflab/models.hpp"
#include "ssflab/suspension.hpp"

namespace ssflab {

namespace defaults {
inline constexpr int kPtfNodes = 64;
inline constexpr double kPtfQuadratureTolerance = 1e-8;
}  // namespace defaults

/// Gauss-Legendre evaluation of -(t/pi)^{1/2} int_0^1 tr(e^{-t A_s^2} B_+) ds.
double rhs_quadrature(const PerturbationPath& path, double t, int nodes = defaults::kPtfNodes);

/// -1/2 tr(erf(t^{1/2} A_+) - erf(t^{1/2} A_-)).
double rhs_erf(const PerturbationPath& path, double t);

struct PtfOptions {
  int nodes = defaults::kPtfNodes;
  double t_min = defaults::kHeatTimeMin;
  double t_max = defaults::kHeatTimeMax;
  double quadrature_tolerance = defaults::kPtfQuadratureTolerance;
  bool refine = false;  // also evaluate the lhs on the grid with 2N-1 points
};

struct PtfRefinement {
  Index points = 0;
  std::vector<double> lhs;
  std::vector<double> residual_lr;
  std::vector<double> ratio;  // residual_lr(N) / residual_lr(2N-1)
};

struct PtfReport {
  Index points = 0;
  std::vector<double> t_values;
  std::vector<double> lhs;
  std::vector<double> rhs_quadrature;
  std::vector<double> rhs_erf;
  std::vector<double> residual_lr;
  std::vector<double> residual_quad;
  std::optional<PtfRefinement> refinement;

  bool quadrature_ok(double tolerance) const;
};

/// Fills a PtfReport for the given pair. Throws ParameterError when a t lies
/// outside [options.t_min, options.t_max].
PtfReport verify(const SuspensionPair& pair, const std::vector<double>& t_values,
                 const PtfOptions& options = {});

}  // namespace ssflab
