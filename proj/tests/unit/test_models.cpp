#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssflab/fixtures.hpp"
#include "ssflab/models.hpp"
#include "ssflab/quadrature.hpp"

using namespace ssflab;

namespace {

const ProfileKind kKinds[] = {ProfileKind::Tanh, ProfileKind::Erf, ProfileKind::SmoothstepCompact};

}  // namespace

TEST(Profile, TanhValues) {
  const ProfileFunction th = make_profile(ProfileKind::Tanh, 1.0);
  EXPECT_DOUBLE_EQ(th(0.0), 0.5);
  EXPECT_NEAR(th(1.0), 0.5 * (1.0 + std::tanh(1.0)), 1e-15);
  EXPECT_NEAR(th(1.0), 0.8807971, 1e-7);
}

TEST(Profile, Invariants) {
  for (ProfileKind k : kKinds) {
    for (double scale : {0.5, 1.0, 3.0}) {
      const ProfileFunction th = make_profile(k, scale);
      double prev = -1.0;
      for (double t = -60.0; t <= 60.0; t += 0.37) {
        const double v = th(t);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        EXPECT_GE(v, prev);
        prev = v;
        EXPECT_NEAR(th(-t) + th(t), 1.0, 1e-12);
      }
      EXPECT_LE(std::abs(th(-50.0 * scale)), 1e-10);
      EXPECT_LE(std::abs(th(50.0 * scale) - 1.0), 1e-10);
      const double mass = integrate_adaptive([&](double t) { return th.derivative(t); },
                                             -60.0 * scale, 60.0 * scale, 1e-12);
      EXPECT_NEAR(mass, 1.0, 1e-8) << to_string(k);
    }
  }
}

TEST(Profile, DerivativeMatchesFiniteDifference) {
  Rng rng(3);
  for (ProfileKind k : kKinds) {
    const ProfileFunction th = make_profile(k, 1.3);
    for (int i = 0; i < 10; ++i) {
      const double t = 4.0 * rng.symmetric();
      const double e = 1e-5;
      const double fd = (th(t + e) - th(t - e)) / (2 * e);
      EXPECT_NEAR(th.derivative(t), fd, 1e-6);
    }
  }
}

TEST(Profile, BadArguments) {
  EXPECT_THROW(make_profile(ProfileKind::Tanh, 0.0), ParameterError);
  EXPECT_THROW(make_profile("cosine", 1.0), ParameterError);
  EXPECT_EQ(parse_profile_kind("erf"), ProfileKind::Erf);
}

TEST(Path, Asymptotes) {
  const Fixture f = fixture("FIX-NONCOMM2");
  const PathPoint lo = path_at(f.path, -50.0);
  const PathPoint hi = path_at(f.path, 50.0);
  EXPECT_LE((lo.a.matrix() - f.path.a_minus.matrix()).norm(), 1e-9);
  EXPECT_LE((hi.a.matrix() - f.path.a_plus().matrix()).norm(), 1e-9);
  const PathPoint mid = path_at(fixture("FIX-SCALAR").path, 0.0);
  EXPECT_NEAR(mid.a.matrix()(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(mid.b_prime.matrix()(0, 0).real(), 2.0 * 0.5, 1e-15);  // theta'(0) = 1/2
}

TEST(Path, DimensionMismatch) {
  EXPECT_THROW(PerturbationPath(HermitianOperator::diagonal({1.0}),
                                HermitianOperator::diagonal({1.0, 2.0}),
                                make_profile(ProfileKind::Tanh, 1.0)),
               DimensionError);
}

TEST(Cutoff, Examples) {
  const auto a = HermitianOperator::diagonal({-2.0, 1.0, 3.0});
  EXPECT_LE((cutoff(a, 3.0).projector - Matrix::Identity(3, 3)).norm(), 1e-14);
  const Matrix p = cutoff(a, 1.5).projector;
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(p(1, 1)), 1.0, 1e-14);
  EXPECT_LE(cutoff(a, 0.0).projector.norm(), 1e-14);
  const auto b = HermitianOperator::diagonal({-2.0, 1.0, 2.0});
  const Matrix p2 = cutoff(b, 2.0).projector;  // |lambda| <= n is closed
  EXPECT_NEAR(p2.trace().real(), 3.0, 1e-14);
}

TEST(Cutoff, ProjectorInvariants) {
  Rng rng(4);
  const HermitianOperator a = random_hermitian(7, rng, 2.0);
  const Matrix p = cutoff(a, 1.0).projector;
  EXPECT_LE((p * p - p).norm(), 1e-12);
  EXPECT_LE((p * a.matrix() - a.matrix() * p).norm(), 1e-12);
}

TEST(Reduce, Examples) {
  Rng rng(5);
  const HermitianOperator a = random_hermitian(6, rng);
  const HermitianOperator b = random_hermitian(6, rng);
  EXPECT_LE((reduce(b, cutoff(a, 10.0)).matrix() - b.matrix()).norm(), 1e-12);
  EXPECT_LE(reduce(b, cutoff(a, 0.0)).matrix().norm(), 1e-14);
  const RealVector& ev = a.eigenvalues();
  std::vector<double> mags;
  for (Index i = 0; i < 6; ++i) mags.push_back(std::abs(ev(i)));
  std::sort(mags.begin(), mags.end());
  const HermitianOperator r = reduce(b, cutoff(a, 0.5 * (mags[2] + mags[3])));
  Eigen::JacobiSVD<Matrix> svd(r.matrix());
  int rank = 0;
  for (Index i = 0; i < 6; ++i) rank += svd.singularValues()(i) > 1e-12;
  EXPECT_LE(rank, 3);
}

TEST(CutoffLevels, DistinctSortedMagnitudes) {
  const auto a = HermitianOperator::diagonal({-2.0, 1.0, 2.0, -0.5});
  const std::vector<double> lv = cutoff_levels(a);
  ASSERT_EQ(lv.size(), 3u);
  EXPECT_DOUBLE_EQ(lv[0], 0.5);
  EXPECT_DOUBLE_EQ(lv[1], 1.0);
  EXPECT_DOUBLE_EQ(lv[2], 2.0);
}

TEST(Taylor, ZeroPerturbation) {
  Rng rng(6);
  const HermitianOperator a = random_hermitian(4, rng);
  const TaylorExpansion t = taylor_expansion(a, HermitianOperator::zero(4), Complex(0, 1), 3);
  for (const Matrix& m : t.terms) EXPECT_LE(m.norm(), 1e-15);
  EXPECT_LE(t.remainder.norm(), 1e-15);
}

TEST(Taylor, FirstOrderTerms) {
  Rng rng(7);
  const HermitianOperator a = random_hermitian(5, rng);
  const HermitianOperator b = random_hermitian(5, rng, 0.5);
  const Complex z(0, 1);
  const TaylorExpansion t = taylor_expansion(a, b, z, 1);
  const Matrix r0 = oracle::resolvent_power(a.matrix(), z, 1);
  const Matrix r1 = oracle::resolvent_power(a.matrix() + b.matrix(), z, 1);
  ASSERT_EQ(t.terms.size(), 1u);
  EXPECT_LE((t.terms[0] - (-r0 * b.matrix() * r0)).norm(), 1e-11);
  EXPECT_LE((t.remainder - r1 * b.matrix() * r0 * b.matrix() * r0).norm(), 1e-11);
  EXPECT_LE((t.terms[0] + t.remainder - (r1 - r0)).norm(), 1e-11);
}

TEST(Taylor, ExactForHigherPowers) {
  Rng rng(8);
  for (int j = 1; j <= 4; ++j) {
    const HermitianOperator a = random_hermitian(6, rng, 2.0);
    const HermitianOperator b = random_hermitian(6, rng, 0.7);
    const Complex z(0, 2);
    const TaylorExpansion t = taylor_expansion(a, b, z, j);
    ASSERT_EQ(static_cast<int>(t.terms.size()), j);
    Matrix sum = t.remainder;
    for (const Matrix& m : t.terms) sum += m;
    const Matrix direct = oracle::resolvent_power(a.matrix() + b.matrix(), z, j) -
                          oracle::resolvent_power(a.matrix(), z, j);
    EXPECT_LE((sum - direct).norm(), 1e-10) << "j=" << j;
  }
}

TEST(Cutoff, ResolventGapsVanishAtFullCutoff) {
  Rng rng(9);
  const HermitianOperator a = random_hermitian(6, rng, 3.0);
  const HermitianOperator b = random_hermitian(6, rng, 1.0);
  const std::vector<double> lv = cutoff_levels(a);
  const std::vector<double> g = cutoff_resolvent_gaps(a, b, lv, Complex(0, 1), 2);
  ASSERT_EQ(g.size(), lv.size());
  EXPECT_LE(g.back(), 1e-12);
}

TEST(Interpolation, InequalityHolds) {
  Rng rng(10);
  for (int p = 1; p <= 3; ++p) {
    const HermitianOperator a = random_hermitian(8, rng, 5.0);
    const HermitianOperator b = random_hermitian(8, rng, 1.0);
    for (const InterpolationRow& row : interpolation_profile(a, b, p))
      EXPECT_LE(row.lhs, row.rhs * (1.0 + 1e-12)) << "p=" << p << " j=" << row.j;
    // At j = p + 1 both sides are the trace norm of B (A0 + i)^{-(p+1)}.
    const InterpolationRow last = interpolation_profile(a, b, p).back();
    EXPECT_NEAR(last.lhs, last.rhs, 1e-12 * last.rhs);
  }
}
