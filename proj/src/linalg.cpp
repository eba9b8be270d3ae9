#include "ssflab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

namespace ssflab {

namespace {

bool all_real(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

}  // namespace

HermitianOperator::HermitianOperator() : cache_(std::make_shared<Cache>()) {}

HermitianOperator::HermitianOperator(const Matrix& m, double reject_tolerance)
    : cache_(std::make_shared<Cache>()) {
  if (m.rows() != m.cols()) {
    throw DimensionError("HermitianOperator: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  const double defect = (m - m.adjoint()).norm();
  const double scale = 1.0 + m.norm();
  if (!(defect / scale <= reject_tolerance)) {
    std::ostringstream os;
    os << "HermitianOperator: symmetrization defect " << defect / scale
       << " exceeds tolerance " << reject_tolerance;
    throw ContractError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
  real_ = all_real(m_);
}

HermitianOperator::HermitianOperator(const RealMatrix& m, double reject_tolerance)
    : HermitianOperator(Matrix(m.cast<Complex>()), reject_tolerance) {}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& entries) {
  RealVector d = Eigen::Map<const RealVector>(entries.data(), static_cast<Index>(entries.size()));
  return HermitianOperator(RealMatrix(d.asDiagonal()));
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> entries) {
  return diagonal(std::vector<double>(entries));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(Matrix(Matrix::Zero(dim, dim)));
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(Matrix(Matrix::Identity(dim, dim)));
}

const Eigensystem& HermitianOperator::eig() const {
  std::call_once(cache_->full_once, [this] {
    cache_->full = eigh_uncached(m_, real_, true);
    cache_->full_ready = true;
  });
  return cache_->full;
}

const RealVector& HermitianOperator::eigenvalues() const {
  std::call_once(cache_->values_once, [this] {
    // A full decomposition that has already been requested is reused.
    if (cache_->full_ready)
      cache_->values = cache_->full.values;
    else
      cache_->values = eigh_uncached(m_, real_, false).values;
  });
  return cache_->values;
}

double HermitianOperator::min_eigenvalue() const {
  const RealVector& v = eigenvalues();
  return v.size() ? v(0) : 0.0;
}

double HermitianOperator::max_abs_eigenvalue() const {
  const RealVector& v = eigenvalues();
  return v.size() ? std::max(std::abs(v(0)), std::abs(v(v.size() - 1))) : 0.0;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionError("HermitianOperator::operator+: dim mismatch");
  return HermitianOperator(Matrix(m_ + other.m_));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionError("HermitianOperator::operator-: dim mismatch");
  return HermitianOperator(Matrix(m_ - other.m_));
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(Matrix(m_ * s));
}

Index lower_bandwidth(const Matrix& m) {
  Index kd = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = m.rows() - 1; i > j + kd; --i)
      if (m(i, j) != Complex(0.0)) {
        kd = i - j;
        break;
      }
  return kd;
}

namespace {

void check_info(lapack_int info, Index n) {
  if (info != 0)
    throw ConvergenceError("eigh: eigensolver did not converge for n=" + std::to_string(n),
                           static_cast<int>(info));
}

// Eigenvalues of a Hermitian band matrix from LAPACK lower band storage,
// ab(i - j, j) = m(i, j) for j <= i <= j + kd.
RealVector band_eigenvalues(const Matrix& m, bool real_input, Index kd) {
  const Index n = m.rows();
  const auto ln = static_cast<lapack_int>(n);
  const auto lkd = static_cast<lapack_int>(kd);
  RealVector w(n);
  double dummy = 0.0;
  Complex cdummy;
  lapack_int info = 0;
  if (real_input) {
    RealMatrix ab = RealMatrix::Zero(kd + 1, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = j; i <= std::min(n - 1, j + kd); ++i) ab(i - j, j) = m(i, j).real();
    info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'N', 'L', ln, lkd, ab.data(), lkd + 1, w.data(), &dummy,
                          1);
  } else {
    Matrix ab = Matrix::Zero(kd + 1, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = j; i <= std::min(n - 1, j + kd); ++i) ab(i - j, j) = m(i, j);
    info = LAPACKE_zhbevd(LAPACK_COL_MAJOR, 'N', 'L', ln, lkd, ab.data(), lkd + 1, w.data(),
                          &cdummy, 1);
  }
  check_info(info, n);
  return w;
}

}  // namespace

Eigensystem eigh_uncached(const Matrix& m, bool real_input, bool want_vectors) {
  const Index n = m.rows();
  Eigensystem out;
  out.values.resize(n);
  if (n == 0) {
    out.vectors.resize(0, 0);
    return out;
  }
  if (!want_vectors && n >= 64) {
    // Banded operators (the suspension H1, H2) skip the dense reduction.
    const Index kd = lower_bandwidth(m);
    if (4 * kd < n) {
      out.values = band_eigenvalues(m, real_input, kd);
      return out;
    }
  }
  const char job = want_vectors ? 'V' : 'N';
  const auto ln = static_cast<lapack_int>(n);
  lapack_int info = 0;
  if (real_input) {
    RealMatrix a = m.real();
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, job, 'L', ln, a.data(), ln, out.values.data());
    if (want_vectors) out.vectors = a.cast<Complex>();
  } else {
    Matrix a = m;
    info = LAPACKE_zheevd(LAPACK_COL_MAJOR, job, 'L', ln, a.data(), ln, out.values.data());
    if (want_vectors) out.vectors = std::move(a);
  }
  check_info(info, n);
  return out;
}

const Eigensystem& eigh(const HermitianOperator& m) { return m.eig(); }

Matrix apply_function(const HermitianOperator& m, const ScalarFn& f) {
  const Eigensystem& es = m.eig();
  RealVector fv(es.values.size());
  for (Index i = 0; i < fv.size(); ++i) {
    fv(i) = f(es.values(i));
    if (!std::isfinite(fv(i))) {
      std::ostringstream os;
      os << "matrix_function: f is not finite at eigenvalue " << es.values(i);
      throw DomainError(os.str());
    }
  }
  return es.vectors * fv.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

HermitianOperator matrix_function(const HermitianOperator& m, const ScalarFn& f) {
  return HermitianOperator(apply_function(m, f));
}

SchattenReport schatten_norm(const Matrix& m, double p) {
  if (!(p >= 1.0)) throw ParameterError("schatten_norm: p must be >= 1");
  SchattenReport r;
  r.p = p;
  if (m.size() == 0) return r;
  Eigen::BDCSVD<Matrix> svd(m);
  r.singular_values = svd.singularValues();
  if (std::isinf(p)) {
    r.value = r.singular_values.size() ? r.singular_values.maxCoeff() : 0.0;
    return r;
  }
  // Scale by the largest singular value to avoid overflow in sigma^p.
  const double smax = r.singular_values.size() ? r.singular_values.maxCoeff() : 0.0;
  if (smax == 0.0) return r;
  double acc = 0.0;
  for (Index i = 0; i < r.singular_values.size(); ++i)
    acc += std::pow(r.singular_values(i) / smax, p);
  r.value = smax * std::pow(acc, 1.0 / p);
  return r;
}

Complex trace(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace: matrix is not square");
  return m.trace();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().maxCoeff();
}

Matrix resolvent_power(const HermitianOperator& m, Complex z, int k) {
  if (k < 1) throw ParameterError("resolvent_power: k must be positive");
  const Eigensystem& es = m.eig();
  Eigen::VectorXcd d(es.values.size());
  for (Index i = 0; i < d.size(); ++i) {
    const Complex gap = es.values(i) - z;
    if (std::abs(gap) <= defaults::kResolventSingularity) {
      std::ostringstream os;
      os << "resolvent_power: z=" << z << " lies within " << defaults::kResolventSingularity
         << " of eigenvalue " << es.values(i);
      throw SingularityError(os.str());
    }
    d(i) = std::pow(gap, -k);
  }
  return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

Matrix spectral_projection(const HermitianOperator& m, double lo, double hi) {
  const Eigensystem& es = m.eig();
  const Index n = m.dim();
  // Endpoints are widened by a few ulps of the spectral scale, so that a level
  // taken from eigenvalues() keeps the eigenvalue it came from.
  const double scale = n ? std::max(1.0, es.values.cwiseAbs().maxCoeff()) : 1.0;
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (es.values(i) >= lo - slack && es.values(i) <= hi + slack)
      p.noalias() += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  return p;
}

Index count_below(const RealVector& ascending, double threshold) {
  return static_cast<Index>(
      std::lower_bound(ascending.data(), ascending.data() + ascending.size(), threshold) -
      ascending.data());
}

}  // namespace ssflab
