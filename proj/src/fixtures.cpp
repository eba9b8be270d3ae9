#include "ssflab/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "ssflab/suspension.hpp"

namespace ssflab {

double Rng::normal() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Matrix random_matrix(Index rows, Index cols, Rng& rng, bool real) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = real ? 0.0 : rng.normal();
      m(i, j) = Complex(re, im);
    }
  return m;
}

HermitianOperator random_hermitian(Index n, Rng& rng, double scale, bool real) {
  const Matrix g = random_matrix(n, n, rng, real);
  Matrix h = 0.5 * (g + g.adjoint());
  const double nrm = operator_norm(h);
  if (nrm > 0.0) h *= scale / nrm;
  return HermitianOperator(h);
}

Matrix random_unitary(Index n, Rng& rng) {
  const Matrix g = random_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

HermitianOperator random_gapped_hermitian(Index n, Rng& rng, double gap) {
  const Matrix u = random_unitary(n, rng);
  RealVector lam(n);
  for (Index i = 0; i < n; ++i) {
    const double mag = gap + rng.uniform();
    lam(i) = rng.uniform() < 0.5 ? -mag : mag;
  }
  return HermitianOperator(Matrix(u * lam.cast<Complex>().asDiagonal() * u.adjoint()));
}

namespace {

const ProfileFunction kTanh = make_profile(ProfileKind::Tanh, 1.0);

Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (const Complex& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

Fixture fixture(const std::string& name, std::uint64_t seed) {
  const double t = defaults::kHalfWidth;
  const Index n = defaults::kPoints;
  if (name == "FIX-SCALAR")
    return {name, "A- = [-1], B+ = [2]: one upward crossing",
            PerturbationPath(HermitianOperator::diagonal({-1.0}), HermitianOperator::diagonal({2.0}), kTanh),
            t, n};
  if (name == "FIX-SCALAR-REVERSED")
    return {name, "A- = [1], B+ = [-2]: one downward crossing",
            PerturbationPath(HermitianOperator::diagonal({1.0}), HermitianOperator::diagonal({-2.0}), kTanh),
            t, n};
  if (name == "FIX-ZERO")
    return {name, "A- = [-1], B+ = [0]: constant path",
            PerturbationPath(HermitianOperator::diagonal({-1.0}), HermitianOperator::diagonal({0.0}), kTanh),
            t, n};
  if (name == "FIX-DIAG2")
    return {name, "A- = diag(-2, -1), B+ = diag(3, 2): two upward crossings",
            PerturbationPath(HermitianOperator::diagonal({-2.0, -1.0}),
                             HermitianOperator::diagonal({3.0, 2.0}), kTanh),
            t, n};
  if (name == "FIX-NONCOMM2") {
    const Matrix am = from_rows({{-1.5, 0.4}, {0.4, 1.2}});
    const Matrix bp = from_rows({{2.8, -0.5}, {-0.5, 0.6}});
    return {name, "2x2 pair with [A-, B+] != 0 and invertible endpoints",
            PerturbationPath(HermitianOperator(am), HermitianOperator(bp), kTanh), t, n};
  }
  if (name == "FIX-GAPPED-ZERO-FLOW")
    return {name, "A- = diag(-1, 0.5), B+ = diag(2, -1): crossings cancel",
            PerturbationPath(HermitianOperator::diagonal({-1.0, 0.5}),
                             HermitianOperator::diagonal({2.0, -1.0}), kTanh),
            t, n};
  if (name == "FIX-HALFCROSS")
    return {name, "A- = [-1], B+ = [1]: A+ = [0] is singular",
            PerturbationPath(HermitianOperator::diagonal({-1.0}), HermitianOperator::diagonal({1.0}), kTanh),
            2.0 * t, 2 * n - 1};
  if (name == "FIX-RAND8") {
    Rng rng(seed);
    HermitianOperator am = random_gapped_hermitian(8, rng, 0.25);
    HermitianOperator bp = random_hermitian(8, rng, 1.5);
    return {name, "seeded 8x8 pair, A- gapped at 0 by 0.25, ||B+|| = 1.5",
            PerturbationPath(std::move(am), std::move(bp), kTanh), t, 201};
  }
  throw ConfigError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"FIX-SCALAR",           "FIX-SCALAR-REVERSED", "FIX-ZERO",     "FIX-DIAG2",
          "FIX-NONCOMM2",         "FIX-GAPPED-ZERO-FLOW", "FIX-HALFCROSS", "FIX-RAND8"};
}

}  // namespace ssflab
