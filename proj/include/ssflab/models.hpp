#pragma once

// Operator data for the suspension experiments: switching profiles, the
// product-form path A(t) = A_- + theta(t) B_+, spectral cut-offs of A_-,
// and the signed resolvent Taylor expansion.

#include <string>
#include <vector>

#include "ssflab/linalg.hpp"

namespace ssflab {

enum class ProfileKind { Tanh, Erf, SmoothstepCompact };

ProfileKind parse_profile_kind(const std::string& name);
std::string to_string(ProfileKind kind);

/// Smooth monotone switching function with theta(-inf) = 0, theta(+inf) = 1
/// and theta(-t) + theta(t) = 1.
///
///   tanh:               (1 + tanh(t/s)) / 2
///   erf:                (1 + erf(t/s)) / 2
///   smoothstep-compact: C^infinity, constant outside [-s, s]
class ProfileFunction {
public:
  ProfileFunction(ProfileKind kind, double scale);

  ProfileKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;

  /// A copy translated so that the new profile is theta(t - shift).
  ProfileFunction shifted(double shift) const;
  double shift() const noexcept { return shift_; }

private:
  ProfileKind kind_;
  double scale_;
  double shift_ = 0.0;
};

ProfileFunction make_profile(ProfileKind kind, double scale);
ProfileFunction make_profile(const std::string& kind, double scale);

struct PathPoint {
  HermitianOperator a;
  HermitianOperator b;
  HermitianOperator b_prime;
};

/// A(t) = A_- + theta(t) B_+ ; the endpoint A_+ = A_- + B_+.
struct PerturbationPath {
  PerturbationPath(HermitianOperator a_minus, HermitianOperator b_plus, ProfileFunction profile);

  HermitianOperator a_minus;
  HermitianOperator b_plus;
  ProfileFunction profile;

  Index dim() const noexcept { return a_minus.dim(); }
  HermitianOperator a_plus() const;

  /// Straight-line interpolation A_s = A_- + s B_+ , s in [0, 1].
  HermitianOperator straight_line(double s) const;
};

PathPoint path_at(const PerturbationPath& path, double t);

struct CutoffProjection {
  double level = 0.0;
  Matrix projector;
};

/// Spectral projection of A_- onto eigenvalues in [-n, n].
CutoffProjection cutoff(const HermitianOperator& a_minus, double level);

/// P B P.
HermitianOperator reduce(const HermitianOperator& b, const CutoffProjection& p);

/// Sorted distinct |eigenvalues| of A_-, merged at relative tolerance 1e-12.
/// These are the only levels at which the cut-off projection changes.
std::vector<double> cutoff_levels(const HermitianOperator& a_minus);

struct TaylorExpansion {
  std::vector<Matrix> terms;  // signed terms, terms[i-1] = (-1)^i T_i^{(j)}(B, ..., B)
  Matrix remainder;           // (-1)^{j+1} R_{j+1}^{(j)}(B; B, ..., B)
};

/// Expansion of (A0 + B - z)^{-j} - (A0 - z)^{-j} in powers of B with the
/// exact remainder, so that the sum of terms and remainder reproduces the
/// difference up to rounding.
///
/// T_i^{(j)}(B,...,B) = sum_{k_0+...+k_i = j-1} G0^{k_0+1} B G0^{k_1+1} ... B G0^{k_i+1}
/// R_i^{(j)}(B;B,...,B) is the same sum with the first factor G1^{k_0+1},
/// where G0 = (A0 - z)^{-1}, G1 = (A0 + B - z)^{-1}.
TaylorExpansion taylor_expansion(const HermitianOperator& a0, const HermitianOperator& b, Complex z,
                                 int j);

/// [(A0+B_n-z)^{-j} - (A0-z)^{-j}] - [(A0+B-z)^{-j} - (A0-z)^{-j}] in trace
/// norm for each cut-off level n, with B_n = P_n B P_n.
std::vector<double> cutoff_resolvent_gaps(const HermitianOperator& a0, const HermitianOperator& b,
                                          const std::vector<double>& levels, Complex z, int j);

struct InterpolationRow {
  int j = 0;
  double lhs = 0.0;  // ||B (A0 + i)^{-j}||_{(p+1)/j}
  double rhs = 0.0;  // ||B||^{(p+1-j)/(p+1)} ||B (A0 + i)^{-(p+1)}||_1^{j/(p+1)}
};

/// Schatten interpolation profile of a p-relative perturbation, j = 1..p+1.
std::vector<InterpolationRow> interpolation_profile(const HermitianOperator& a0,
                                                    const HermitianOperator& b, int p);

}  // namespace ssflab
