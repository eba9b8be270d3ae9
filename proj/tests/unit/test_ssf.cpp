#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssflab/doi.hpp"
#include "ssflab/fixtures.hpp"
#include "ssflab/ssf.hpp"

using namespace ssflab;

namespace {

void expect_matches_counting(const StepFunction& xi, const HermitianOperator& plus,
                             const HermitianOperator& minus, Rng& rng) {
  const RealVector p = oracle::eigenvalues(plus.matrix());
  const RealVector m = oracle::eigenvalues(minus.matrix());
  for (int i = 0; i < 200; ++i) {
    const double x = 5.0 * rng.symmetric();
    EXPECT_EQ(xi(x), oracle::counting_ssf(p, m, x)) << "x=" << x;
  }
}

}  // namespace

TEST(StepFunction, EvaluationIsRightContinuous) {
  const StepFunction f(0.0, {-1.0, 1.0}, {1.0, 0.0});
  EXPECT_EQ(f(-1.0), 1.0);
  EXPECT_EQ(f(1.0), 0.0);
  EXPECT_EQ(f.left_limit(1.0), 1.0);
  EXPECT_EQ(f.left_limit(-1.0), 0.0);
  EXPECT_EQ(f(-5.0), 0.0);
  EXPECT_TRUE(f.compactly_supported());
  EXPECT_DOUBLE_EQ(f.integral(-3.0, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(f.total_variation(), 2.0);
}

TEST(StepFunction, Arithmetic) {
  const StepFunction a(0.0, {0.0, 2.0}, {1.0, 0.0});
  const StepFunction b(0.0, {1.0, 3.0}, {2.0, 0.0});
  const StepFunction s = a + b;
  EXPECT_EQ(s(0.5), 1.0);
  EXPECT_EQ(s(1.5), 3.0);
  EXPECT_EQ(s(2.5), 2.0);
  EXPECT_EQ((a - a).simplified().breakpoints().size(), 0u);
  EXPECT_EQ((a * 3.0)(1.0), 3.0);
  EXPECT_EQ(a.shifted(1.0)(2.5), 1.0);
  EXPECT_THROW(StepFunction(0.0, {1.0, 0.0}, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(StepFunction(0.0, {1.0}, {}), DimensionError);
}

TEST(StepFunction, CsvLayout) {
  std::ostringstream os;
  StepFunction(0.0, {-1.0, 1.0}, {1.0, 0.0}).write_csv(os);
  EXPECT_EQ(os.str(), "breakpoint,value\n-inf,0\n-1,1\n1,0\n");
}

TEST(SsfPair, EqualOperatorsGiveZero) {
  Rng rng(41);
  const HermitianOperator a = random_hermitian(5, rng);
  const StepFunction xi = ssf_pair(a, a);
  EXPECT_EQ(xi.total_variation(), 0.0);
}

TEST(SsfPair, ScalarPlateau) {
  const Fixture f = fixture("FIX-SCALAR");
  const StepFunction xi = ssf_pair(f.path.a_plus(), f.path.a_minus);
  EXPECT_EQ(xi(-1.5), 0.0);
  EXPECT_EQ(xi(-1.0), 1.0);
  EXPECT_EQ(xi(0.99), 1.0);
  EXPECT_EQ(xi(1.0), 0.0);
}

TEST(SsfPair, Diag2Steps) {
  const Fixture f = fixture("FIX-DIAG2");
  const StepFunction xi = ssf_pair(f.path.a_plus(), f.path.a_minus);
  EXPECT_EQ(xi(-2.5), 0.0);
  EXPECT_EQ(xi(-1.5), 1.0);
  EXPECT_EQ(xi(0.0), 2.0);
  EXPECT_EQ(xi(1.0), 0.0);
  EXPECT_EQ(xi.left_tail(), 0.0);
  EXPECT_EQ(xi.right_tail(), 0.0);
}

TEST(SsfPair, MatchesCountingOracle) {
  Rng rng(42);
  for (int i = 0; i < 5; ++i) {
    const HermitianOperator a = random_hermitian(8, rng, 3.0);
    const HermitianOperator b = random_hermitian(8, rng, 2.0);
    const HermitianOperator ap = a + b;
    const StepFunction xi = ssf_pair(ap, a);
    expect_matches_counting(xi, ap, a, rng);
    EXPECT_LE(xi.total_variation(), 16.0);
    for (double v : xi.values()) EXPECT_EQ(v, std::round(v));
  }
}

TEST(SsfPair, UnitaryInvarianceAndShiftCovariance) {
  Rng rng(43);
  const HermitianOperator a = random_hermitian(6, rng, 2.0);
  const HermitianOperator ap = a + random_hermitian(6, rng, 1.0);
  const StepFunction xi = ssf_pair(ap, a);
  const Matrix u = random_unitary(6, rng);
  const StepFunction rot = ssf_pair(HermitianOperator(Matrix(u * ap.matrix() * u.adjoint())),
                                    HermitianOperator(Matrix(u * a.matrix() * u.adjoint())));
  const double c = 0.75;
  const StepFunction sh = ssf_pair(ap + HermitianOperator::identity(6) * c,
                                   a + HermitianOperator::identity(6) * c);
  for (int i = 0; i < 200; ++i) {
    const double x = 4.0 * rng.symmetric();
    EXPECT_EQ(rot(x), xi(x));
    EXPECT_EQ(sh(x + c), xi(x));
  }
}

TEST(SsfPair, CoincidentEigenvaluesCancel) {
  const StepFunction xi = ssf_pair(HermitianOperator::diagonal({1.0, 2.0}),
                                   HermitianOperator::diagonal({1.0 + 1e-14, 0.0}));
  EXPECT_EQ(xi(1.0 + 5e-15), 1.0);
  for (double bp : xi.breakpoints()) EXPECT_GT(std::abs(bp - 1.0), 1e-12);
}

TEST(SsfNonneg, Examples) {
  const StepFunction z = ssf_nonneg_pair(HermitianOperator::diagonal({1.0, 2.0}),
                                         HermitianOperator::diagonal({1.0, 2.0}));
  EXPECT_EQ(z.total_variation(), 0.0);
  const StepFunction xi = ssf_nonneg_pair(HermitianOperator::diagonal({1.0, 2.0}),
                                          HermitianOperator::diagonal({0.0, 2.0}));
  EXPECT_EQ(xi(0.0), 1.0);
  EXPECT_EQ(xi(0.5), 1.0);
  EXPECT_EQ(xi(1.0), 0.0);
  EXPECT_EQ(xi(-0.1), 0.0);
  // Rounding dust below zero is clamped; a real negative eigenvalue is rejected.
  EXPECT_NO_THROW(ssf_nonneg_pair(HermitianOperator::diagonal({-1e-9}), HermitianOperator::diagonal({1.0})));
  EXPECT_THROW(ssf_nonneg_pair(HermitianOperator::diagonal({-1e-3}), HermitianOperator::diagonal({1.0})),
               ContractError);
}

TEST(SsfWeighted, FractionalWeights) {
  RealVector e2(1), w2(1), e1(1), w1(1);
  e2 << 1.0;
  w2 << 0.25;
  e1 << 0.0;
  w1 << 0.75;
  const StepFunction xi = ssf_weighted(e2, w2, e1, w1);
  EXPECT_DOUBLE_EQ(xi(0.5), 0.75);
  EXPECT_DOUBLE_EQ(xi(1.5), 0.5);
}

TEST(Krein, Examples) {
  const Fixture s = fixture("FIX-SCALAR");
  const KreinCheck c = krein_check(s.path.a_plus(), s.path.a_minus,
                                   {[](double) { return 3.0; }, [](double) { return 0.0; }});
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_EQ(c.rhs, 0.0);
  const KreinCheck id = krein_check(s.path.a_plus(), s.path.a_minus, scalar_family("identity"));
  EXPECT_NEAR(id.lhs, 2.0, 1e-15);
  EXPECT_NEAR(id.rhs, 2.0, 1e-15);
  const Fixture d = fixture("FIX-DIAG2");
  const KreinCheck g = krein_check(d.path.a_plus(), d.path.a_minus, scalar_family("gauss"));
  EXPECT_LE(g.residual, 1e-12);
  // Exact piecewise value: int_{-2}^{-1} f' + 2 int_{-1}^{1} f' for f = exp(-x^2).
  const auto f = [](double x) { return std::exp(-x * x); };
  EXPECT_NEAR(g.rhs, (f(-1) - f(-2)) + 2 * (f(1) - f(-1)), 1e-15);
}

TEST(Krein, SeededFamilies) {
  Rng rng(44);
  const char* fams[] = {"identity", "square", "cube", "gauss", "erf"};
  for (int i = 0; i < 20; ++i) {
    const Index n = 2 + static_cast<Index>(rng.next() % 7);
    const HermitianOperator a = random_hermitian(n, rng, 2.0);
    const HermitianOperator ap = a + random_hermitian(n, rng, 1.0);
    const KreinCheck c = krein_check(ap, a, scalar_family(fams[i % 5], 0.5 + rng.uniform()));
    EXPECT_LE(c.residual, 1e-10);
  }
}

TEST(Weight, ExponentAndAntiderivative) {
  EXPECT_EQ(weight_exponent(1), 2);
  EXPECT_EQ(weight_exponent(2), 4);
  EXPECT_EQ(weight_exponent(3), 4);
  for (int q : {2, 4, 6}) {
    const auto w = [q](double x) { return 1.0 / (1.0 + std::pow(x, q)); };
    for (double x : {-3.0, -0.5, 0.7, 2.0})
      EXPECT_NEAR(weight_antiderivative(x, q) - weight_antiderivative(0.0, q),
                  x > 0 ? oracle::integrate(w, 0.0, x) : -oracle::integrate(w, x, 0.0), 1e-13);
    EXPECT_NEAR(weight_antiderivative(INFINITY, q) - weight_antiderivative(-INFINITY, q),
                2 * oracle::integrate([&](double u) { return w(std::tan(u)) / std::pow(std::cos(u), 2); },
                                      0.0, std::numbers::pi / 2 - 1e-9, 256),
                1e-6);
  }
  EXPECT_THROW(weight_antiderivative(1.0, 3), ParameterError);
}

TEST(CutoffLimit, FullLevelReproducesPair) {
  const Fixture d = fixture("FIX-DIAG2");
  const CutoffLimit cl = ssf_cutoff_limit(d.path.a_minus, d.path.b_plus, {0.5, 1.5, 3.0});
  ASSERT_EQ(cl.l1_weighted_gaps.size(), 3u);
  EXPECT_EQ(cl.l1_weighted_gaps.back(), 0.0);
  const CutoffLimit single = ssf_cutoff_limit(d.path.a_minus, d.path.b_plus, {10.0});
  EXPECT_EQ(single.l1_weighted_gaps[0], 0.0);
  EXPECT_THROW(ssf_cutoff_limit(d.path.a_minus, d.path.b_plus, {2.0, 1.0}), ParameterError);
}

TEST(CutoffLimit, SeededSweepEndsAtZero) {
  Rng rng(45);
  const HermitianOperator a = random_hermitian(8, rng, 3.0);
  const HermitianOperator b = random_hermitian(8, rng, 1.0);
  const RealVector& ev = a.eigenvalues();
  std::vector<double> mags;
  for (Index i = 0; i < 8; ++i) mags.push_back(std::abs(ev(i)));
  std::sort(mags.begin(), mags.end());
  const std::vector<double> levels{mags[1], mags[2], mags[3], mags[5], mags[6], mags[7]};
  const CutoffLimit cl = ssf_cutoff_limit(a, b, levels);
  const auto& g = cl.l1_weighted_gaps;
  EXPECT_LE(g.back(), 1e-12);
  EXPECT_LE(g[5], g[4]);
  // The gap is the L1 distance with weight (1 + x^2)^{-1}: sum of |value| * d(atan).
  const StepFunction diff = cl.per_level[2] - cl.limit;
  double num = 0.0;
  for (const Piece& pc : diff.pieces()) num += std::abs(pc.value) * (std::atan(pc.hi) - std::atan(pc.lo));
  EXPECT_NEAR(g[2], num, 1e-13);
}
