#pragma once

// Double operator integrals in finite dimension. With a = U diag(l) U^H and
// b = V diag(m) V^H,
//
//   T_f^{a,b}(x) = U (K o (U^H x V)) V^H,   K_ij = f^[1](l_i, m_j),
//
// where f^[1] is the divided difference, so f(a) - f(b) = T_f^{a,b}(a - b).

#include <string>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/models.hpp"

namespace ssflab {

namespace defaults {
inline constexpr double kCoincidenceScale = 1e-7;
inline constexpr double kDkStep = 1e-5;
inline constexpr int kDkNodes = 64;
}  // namespace defaults

struct DoiKernel {
  RealVector a_eigs;
  RealVector b_eigs;
  RealMatrix kernel;
  double delta = 0.0;  // coincidence threshold
};

/// Divided-difference kernel; f' at the midpoint replaces the quotient when
/// |l_i - m_j| <= delta = 1e-7 max(|eigenvalues| u {1}).
DoiKernel doi_kernel(const HermitianOperator& a, const HermitianOperator& b,
                     const DifferentiableFn& f);

Matrix doi_apply(const HermitianOperator& a, const HermitianOperator& b, const DifferentiableFn& f,
                 const Matrix& x);

struct DkDerivative {
  double analytic = 0.0;
  double finite_difference = 0.0;
  double residual = 0.0;
};

/// d/ds tr f(A_s) at s, analytically as tr(f'(A_s) B_+) and by a central
/// difference with step eps.
DkDerivative dk_derivative(const PerturbationPath& path, const DifferentiableFn& f, double s,
                           double eps = defaults::kDkStep);

/// |tr(f(A_+) - f(A_-)) - int_0^1 tr(f'(A_s) B_+) ds| with Gauss-Legendre nodes.
double dk_integral_check(const PerturbationPath& path, const DifferentiableFn& f,
                         int nodes = defaults::kDkNodes);

/// Trace-norm distance between T_f^{A0+B_n, A0}(B_n) and T_f^{A0+B, A0}(B)
/// for each cut-off level n, B_n = P_n B P_n.
std::vector<double> doi_cutoff_gaps(const HermitianOperator& a0, const HermitianOperator& b,
                                    const std::vector<double>& levels, const DifferentiableFn& f);

/// Named scalar families with derivatives: "identity", "square", "cube",
/// "exp", "gauss" (e^{-t x^2}), "erf" (erf(t^{1/2} x)).
DifferentiableFn scalar_family(const std::string& name, double t = 1.0);

}  // namespace ssflab
