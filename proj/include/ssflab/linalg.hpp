#pragma once

// Dense Hermitian linear algebra shared by every other module: a Hermitian
// operator type with a write-once eigendecomposition cache, spectral
// calculus, Schatten norms, traces and resolvent powers.

#include <complex>
#include <functional>
#include <initializer_list>
#include <atomic>
#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "ssflab/error.hpp"

namespace ssflab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A real function of a real variable, as used by the functional calculus.
using ScalarFn = std::function<double(double)>;

/// A real C^1 function paired with its derivative.
struct DifferentiableFn {
  ScalarFn value;
  ScalarFn derivative;
};

namespace defaults {
inline constexpr double kHermitianRejectTolerance = 1e-8;
inline constexpr double kResolventSingularity = 1e-12;
}  // namespace defaults

/// Ascending eigenvalues with the matching orthonormal eigenvectors (columns).
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

struct SchattenReport {
  double p = 1.0;
  double value = 0.0;
  RealVector singular_values;
};

/// Dense complex Hermitian matrix.
///
/// The input is symmetrized as (M + M^H)/2 at construction; construction
/// fails with ContractError if the defect ||M - M^H||_F / (1 + ||M||_F)
/// exceeds the rejection tolerance. The eigendecomposition is computed at
/// most once and shared by all copies; concurrent readers are safe.
class HermitianOperator {
public:
  HermitianOperator();
  explicit HermitianOperator(const Matrix& m,
                             double reject_tolerance = defaults::kHermitianRejectTolerance);
  explicit HermitianOperator(const RealMatrix& m,
                             double reject_tolerance = defaults::kHermitianRejectTolerance);

  static HermitianOperator diagonal(const std::vector<double>& entries);
  static HermitianOperator diagonal(std::initializer_list<double> entries);
  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

  /// True when every entry has an exactly zero imaginary part.
  bool is_real() const noexcept { return real_; }

  /// Full eigendecomposition, computed on first use.
  const Eigensystem& eig() const;

  /// Ascending eigenvalues. Reuses a cached full decomposition when present;
  /// otherwise runs a values-only solve (cheaper) and caches that.
  const RealVector& eigenvalues() const;

  double min_eigenvalue() const;
  double max_abs_eigenvalue() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;

private:
  struct Cache {
    std::once_flag full_once;
    std::once_flag values_once;
    Eigensystem full;
    RealVector values;
    std::atomic<bool> full_ready{false};
  };

  Matrix m_;
  bool real_ = true;
  std::shared_ptr<Cache> cache_;
};

/// Eigendecomposition of M (cached on M). Throws ConvergenceError when the
/// LAPACK divide-and-conquer solver reports failure.
const Eigensystem& eigh(const HermitianOperator& m);

/// Uncached LAPACK call; exposed for callers that own a scratch matrix.
/// Values-only requests on band matrices (bandwidth < n/4) use the band solver.
Eigensystem eigh_uncached(const Matrix& m, bool real_input, bool want_vectors);

/// Largest i - j with m(i, j) != 0.
Index lower_bandwidth(const Matrix& m);

/// U diag(f(lambda)) U^H. Throws DomainError naming the first eigenvalue at
/// which f is not finite.
HermitianOperator matrix_function(const HermitianOperator& m, const ScalarFn& f);

/// Same as matrix_function but returns the raw matrix, skipping the Hermitian check.
Matrix apply_function(const HermitianOperator& m, const ScalarFn& f);

/// l^p norm of the singular values; p = +infinity gives the operator norm.
SchattenReport schatten_norm(const Matrix& m, double p);

Complex trace(const Matrix& m);

double operator_norm(const Matrix& m);

/// (M - z)^{-k} through the eigendecomposition of M.
Matrix resolvent_power(const HermitianOperator& m, Complex z, int k);

/// Spectral projection onto eigenvalues in the closed interval [lo, hi], with
/// the endpoints widened by rounding slack.
Matrix spectral_projection(const HermitianOperator& m, double lo, double hi);

/// Number of eigenvalues strictly below `threshold`.
Index count_below(const RealVector& ascending, double threshold);

}  // namespace ssflab
