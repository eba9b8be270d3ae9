#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssflab/doi.hpp"
#include "ssflab/fixtures.hpp"

using namespace ssflab;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(DoiKernel, DividedDifferencesAndDiagonal) {
  const auto a = HermitianOperator::diagonal({0.0, 1.0});
  const auto b = HermitianOperator::diagonal({0.0, 2.0});
  const DoiKernel k = doi_kernel(a, b, scalar_family("square"));
  // (l^2 - m^2) / (l - m) = l + m, and 2l on coincidence.
  EXPECT_NEAR(k.kernel(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(k.kernel(0, 1), 2.0, 1e-15);
  EXPECT_NEAR(k.kernel(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(k.kernel(1, 1), 3.0, 1e-15);
  EXPECT_THROW(doi_kernel(a, HermitianOperator::diagonal({1.0}), scalar_family("cube")), DimensionError);
}

TEST(DoiApply, IdentityFamilyIsIdentityMap) {
  Rng rng(71);
  const HermitianOperator a = random_hermitian(6, rng), b = random_hermitian(6, rng);
  const Matrix x = random_matrix(6, 6, rng);
  EXPECT_LE(max_abs(doi_apply(a, b, scalar_family("identity"), x) - x), 1e-12);
}

TEST(DoiApply, SquareFamilyClosedForm) {
  Rng rng(72);
  const HermitianOperator a = random_hermitian(6, rng), b = random_hermitian(6, rng);
  const Matrix x = random_matrix(6, 6, rng);
  const Matrix ref = a.matrix() * x + x * b.matrix();
  EXPECT_LE(max_abs(doi_apply(a, b, scalar_family("square"), x) - ref), 1e-11);
}

TEST(DoiApply, DifferenceOfFunctions) {
  Rng rng(73);
  for (const char* name : {"identity", "cube", "exp", "gauss", "erf"}) {
    const HermitianOperator a = random_hermitian(8, rng, 1.5), b = random_hermitian(8, rng, 1.5);
    const DifferentiableFn f = scalar_family(name);
    const Matrix lhs = oracle::function(a.matrix(), f.value) - oracle::function(b.matrix(), f.value);
    const Matrix rhs = doi_apply(a, b, f, a.matrix() - b.matrix());
    EXPECT_LE(max_abs(lhs - rhs), 1e-10) << name;
  }
}

TEST(DoiApply, CoincidentSpectraUseDerivative) {
  Rng rng(74);
  const HermitianOperator a = random_hermitian(5, rng);
  const Matrix x = random_matrix(5, 5, rng);
  // With A = B the operator is the Frechet derivative of f at A.
  const DifferentiableFn f = scalar_family("exp");
  const double eps = 1e-6;
  const Matrix xh = 0.5 * (x + x.adjoint());
  const Matrix fd = (oracle::function(a.matrix() + eps * xh, f.value) -
                     oracle::function(a.matrix() - eps * xh, f.value)) / (2 * eps);
  EXPECT_LE(max_abs(doi_apply(a, a, f, xh) - fd), 1e-7);
  EXPECT_THROW(doi_apply(a, a, f, Matrix::Zero(4, 5)), DimensionError);
}

TEST(ScalarFamily, DerivativesMatchDifferences) {
  for (const char* name : {"identity", "square", "cube", "exp", "gauss", "erf"}) {
    const DifferentiableFn f = scalar_family(name, 0.7);
    for (double x : {-1.3, 0.2, 0.9}) {
      const double h = 1e-5;
      EXPECT_NEAR(f.derivative(x), (f.value(x + h) - f.value(x - h)) / (2 * h), 1e-8) << name;
    }
  }
  EXPECT_THROW(scalar_family("sine"), ParameterError);
}

TEST(DkDerivative, MatchesFiniteDifference) {
  const Fixture fx = fixture("FIX-NONCOMM2");
  for (const char* name : {"cube", "gauss", "erf"}) {
    const DkDerivative d = dk_derivative(fx.path, scalar_family(name), 0.4);
    EXPECT_LE(d.residual, 1e-7) << name;
  }
  EXPECT_THROW(dk_derivative(fx.path, scalar_family("cube"), 0.4, 0.0), ParameterError);
}

TEST(DkIntegral, FundamentalTheorem) {
  Rng rng(75);
  const PerturbationPath path(random_hermitian(6, rng, 2.0), random_hermitian(6, rng, 1.0),
                              make_profile(ProfileKind::Tanh, 1.0));
  for (const char* name : {"cube", "exp", "gauss", "erf"})
    EXPECT_LE(dk_integral_check(path, scalar_family(name)), 1e-10) << name;
  EXPECT_THROW(dk_integral_check(path, scalar_family("cube"), 0), ParameterError);
}

TEST(DoiCutoff, GapsVanishAtFullLevel) {
  Rng rng(76);
  const HermitianOperator a0 = random_hermitian(6, rng, 3.0), b = random_hermitian(6, rng, 0.5);
  const std::vector<double> levels = cutoff_levels(a0);
  const std::vector<double> gaps = doi_cutoff_gaps(a0, b, levels, scalar_family("erf"));
  ASSERT_EQ(gaps.size(), levels.size());
  EXPECT_LE(gaps.back(), 1e-12);
  EXPECT_GT(gaps.front(), gaps.back());
}
