#pragma once

// Spectral shift functions of finite Hermitian pairs as differences of
// eigenvalue counting functions, the Krein trace formula, and the
// cut-off fixing of xi(.; A_+, A_-).

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/models.hpp"

namespace ssflab {

namespace defaults {
inline constexpr double kEigenvalueMergeTolerance = 1e-12;
inline constexpr double kNonnegativeDust = 1e-8;
inline constexpr double kNonnegativeReject = 1e-6;
inline constexpr int kWeightExponentP = 1;
}  // namespace defaults

/// A maximal interval on which a step function is constant. lo may be -inf
/// and hi may be +inf.
struct Piece {
  double lo;
  double hi;
  double value;
};

/// Right-continuous piecewise-constant function on the real line.
///
/// values[i] is the value on [breakpoints[i], breakpoints[i+1]), and the last
/// entry is the right tail; left_tail is the value on (-inf, breakpoints[0]).
class StepFunction {
public:
  StepFunction() = default;
  StepFunction(double left_tail, std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double c) { return StepFunction(c, {}, {}); }

  /// Sum of weighted unit steps: f(x) = sum over jumps (x_j, w_j) with x_j <= x of w_j.
  /// Jump locations closer than `merge` (relative to max(1, |x|)) are merged and
  /// zero net jumps are dropped.
  static StepFunction from_jumps(std::vector<std::pair<double, double>> jumps,
                                 double merge = defaults::kEigenvalueMergeTolerance);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double left_tail() const noexcept { return left_tail_; }
  double right_tail() const noexcept { return values_.empty() ? left_tail_ : values_.back(); }

  double operator()(double x) const;
  double left_limit(double x) const;

  std::vector<Piece> pieces() const;

  /// Exact int_a^b f, a <= b, possibly infinite when the tail vanishes.
  double integral(double a, double b) const;

  /// sum over pieces of value * (G(hi) - G(lo)) for an antiderivative G of a
  /// weight; G is called with +-infinity on the tails when their value is nonzero.
  template <typename G>
  double integrate_antiderivative(G&& antiderivative) const {
    double acc = 0.0;
    for (const Piece& p : pieces()) {
      if (p.value == 0.0) continue;
      acc += p.value * (antiderivative(p.hi) - antiderivative(p.lo));
    }
    return acc;
  }

  double total_variation() const;
  bool compactly_supported() const noexcept { return left_tail_ == 0.0 && right_tail() == 0.0; }

  StepFunction operator+(const StepFunction& other) const;
  StepFunction operator-(const StepFunction& other) const;
  StepFunction operator*(double s) const;

  /// f(x - c).
  StepFunction shifted(double c) const;

  /// Merges adjacent pieces with equal value.
  StepFunction simplified() const;

  /// CSV with header "breakpoint,value"; the first data row is "-inf,left_tail".
  void write_csv(std::ostream& os) const;

private:
  double left_tail_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// xi(lambda) = #{eig(A_-) <= lambda} - #{eig(A_+) <= lambda}.
StepFunction ssf_pair(const HermitianOperator& a_plus, const HermitianOperator& a_minus);

/// Counting-function difference #{eig(H1) <= lambda} - #{eig(H2) <= lambda}
/// of two positive semidefinite operators (dimensions may differ). Negative
/// dust down to -1e-6 is clamped to 0; below that ContractError is raised.
StepFunction ssf_nonneg_pair(const HermitianOperator& h2, const HermitianOperator& h1);

/// Same counting difference from given ascending eigenvalues and per-eigenvalue weights.
StepFunction ssf_weighted(const RealVector& h2_values, const RealVector& h2_weights,
                          const RealVector& h1_values, const RealVector& h1_weights);

struct KreinCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// lhs = tr(f(A_+) - f(A_-)); rhs = int f' xi evaluated exactly from f at the
/// piece ends.
KreinCheck krein_check(const HermitianOperator& a_plus, const HermitianOperator& a_minus,
                       const DifferentiableFn& f);

/// Exact antiderivative of 1/(1 + |x|^q) for even q >= 2.
double weight_antiderivative(double x, int q);

/// p_0 + 1 with p_0 = 2 floor(p/2) + 1.
int weight_exponent(int p);

/// int |f| (1 + |nu|^q)^{-1} d nu for a compactly supported step f.
double weighted_l1(const StepFunction& f, int q);

struct CutoffLimit {
  std::vector<double> levels;
  std::vector<StepFunction> per_level;
  StepFunction limit;
  std::vector<double> l1_weighted_gaps;
};

/// xi(.; A_- + P_n B_+ P_n, A_-) for each level n, the full xi(.; A_- + B_+, A_-),
/// and the weighted L1 distance of each to the full one.
CutoffLimit ssf_cutoff_limit(const HermitianOperator& a_minus, const HermitianOperator& b_plus,
                             const std::vector<double>& levels,
                             int p = defaults::kWeightExponentP);

}  // namespace ssflab
