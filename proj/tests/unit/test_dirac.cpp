#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssflab/dirac.hpp"

using namespace ssflab;

TEST(Clifford, SizesAndRelations) {
  for (int d = 1; d <= 8; ++d) {
    const CliffordSet s = clifford(d);
    EXPECT_EQ(s.d, d);
    EXPECT_EQ(s.size, Index{1} << ((d + 1) / 2));
    EXPECT_EQ(s.gammas.size(), static_cast<std::size_t>(d + 1));
    EXPECT_TRUE(clifford_relations_exact(s)) << "d=" << d;
  }
  EXPECT_THROW(clifford(0), ParameterError);
  EXPECT_THROW(clifford(9), ParameterError);
}

TEST(Clifford, BrokenSetIsDetected) {
  CliffordSet s = clifford(2);
  s.gammas[1] = s.gammas[2];
  EXPECT_FALSE(clifford_relations_exact(s));
}

TEST(FreeDirac, SpectrumMatchesEnumeration) {
  struct Case {
    int d;
    Index modes;
  };
  for (const Case c : {Case{1, 33}, Case{2, 9}, Case{3, 5}}) {
    const double mass = 0.5, box = 20.0;
    const DiracModel m = build_dirac(c.d, mass, box, c.modes);
    const RealVector ref = free_dirac_spectrum(c.d, mass, box, c.modes);
    ASSERT_EQ(ref.size(), m.dim());
    EXPECT_LE((m.free.eigenvalues() - ref).cwiseAbs().maxCoeff(), 1e-10) << "d=" << c.d;
  }
}

TEST(FreeDirac, OneDimensionalClosedForm) {
  // d = 1, M = 3, L = 2 pi: kappa in {-1, 0, 1}.
  const RealVector ev = free_dirac_spectrum(1, 1.0, 2.0 * std::numbers::pi, 3);
  ASSERT_EQ(ev.size(), 6);
  const double r2 = std::sqrt(2.0);
  const double expected[] = {-r2, -r2, -1.0, 1.0, r2, r2};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(ev(i), expected[i], 1e-14);
}

TEST(FreeDirac, ChiralSymmetryWhenMassless) {
  for (int d : {1, 3}) {
    const DiracModel m = build_dirac(d, 0.0, 10.0, d == 1 ? 9 : 3);
    const Matrix g = chiral_operator(m);
    EXPECT_LE((g * m.free.matrix() + m.free.matrix() * g).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((g * g - Matrix::Identity(m.dim(), m.dim())).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(FreeDirac, Validation) {
  EXPECT_THROW(build_dirac(1, -1.0, 10.0, 9), ParameterError);
  EXPECT_THROW(build_dirac(1, 0.0, 0.0, 9), ParameterError);
  EXPECT_THROW(build_dirac(1, 0.0, 10.0, 8), ParameterError);
  EXPECT_THROW(build_dirac(3, 0.0, 10.0, 17), ParameterError);
}

TEST(Potential, MultiplicationOperatorSpectrum) {
  const DiracModel m = build_dirac(1, 0.0, 20.0, 33, make_potential("gaussian", clifford(1), 1.5, 2.0));
  ASSERT_TRUE(m.potential.has_value());
  std::vector<double> samples;
  for (const auto& x : m.positions) {
    const double v = 1.5 * std::exp(-x[0] * x[0] / 4.0);
    samples.push_back(v);
    samples.push_back(v);
  }
  std::sort(samples.begin(), samples.end());
  const RealVector& ev = m.potential->eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev(i), samples[static_cast<std::size_t>(i)], 1e-12);
}

TEST(Potential, ShapesAndValidation) {
  const CliffordSet s1 = clifford(1), s3 = clifford(3);
  EXPECT_EQ(make_potential("zero", s1, 1.0, 1.0)({0.0}), Matrix(Matrix::Zero(2, 2)));
  EXPECT_NEAR(make_potential("sharp", s1, 2.0, 1.0)({0.5})(0, 0).real(), 2.0, 0.0);
  EXPECT_NEAR(make_potential("sharp", s1, 2.0, 1.0)({1.5})(0, 0).real(), 0.0, 0.0);
  const Matrix a = make_potential("magnetic", s3, 1.0, 1.0)({0.3, -0.2, 0.1});
  EXPECT_LE((a - a.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(make_potential("magnetic", s1, 1.0, 1.0), ParameterError);
  EXPECT_THROW(make_potential("gaussian", s1, 1.0, 0.0), ParameterError);
  EXPECT_THROW(make_potential("coulomb", s1, 1.0, 1.0), ParameterError);
  const PotentialFn bad = [](const std::vector<double>&) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
  };
  EXPECT_THROW(build_dirac(1, 0.0, 10.0, 5, bad), ContractError);
}

TEST(L1L2, GaussianAgainstCubeIntegrals) {
  const auto f = [](const std::vector<double>& x) { return std::exp(-x[0] * x[0]); };
  const L1L2Report r = l1l2_norm(f, 1, 8);
  double ref = 0.0;
  for (int c = -8; c <= 8; ++c)
    ref += std::sqrt(oracle::integrate([](double x) { return std::exp(-2 * x * x); }, c - 0.5, c + 0.5, 16));
  EXPECT_NEAR(r.value, ref, 1e-10);
  EXPECT_EQ(r.cubes, 17);
  EXPECT_LT(r.tail, 1e-8 * r.value);
}

TEST(L1L2, SlowDecayNeedsTailBound) {
  const auto f = [](const std::vector<double>& x) { return 1.0 / (1.0 + x[0] * x[0]); };
  EXPECT_THROW(l1l2_norm(f, 1, 3), ContractError);
  EXPECT_EQ(l1l2_norm(f, 1, 3, 16, 0.7).tail, 0.7);
}

TEST(Hypothesis, GaussianIsStableSharpIsNot) {
  const CliffordSet s = clifford(1);
  const DiracModel smooth = build_dirac(1, 0.0, 20.0, 33, make_potential("gaussian", s, 1.0, 1.0));
  const HypothesisReport g = hypothesis_diagnostics(smooth, 1);
  EXPECT_EQ(g.schatten_ratio.size(), 2u);
  EXPECT_EQ(g.commutator_ratio.size(), 2u);
  EXPECT_EQ(g.fine_modes, 67);
  EXPECT_TRUE(g.schatten_stable());
  for (double r : g.commutator_ratio) EXPECT_LE(r, defaults::kStableRatioHigh);

  const DiracModel sharp = build_dirac(1, 0.0, 20.0, 33, make_potential("sharp", s, 1.0, 1.0));
  const HypothesisReport h = hypothesis_diagnostics(sharp, 1);
  EXPECT_GE(*std::max_element(h.commutator_ratio.begin(), h.commutator_ratio.end()),
            defaults::kGrowthFactor);
  EXPECT_THROW(hypothesis_diagnostics(sharp, 0), ParameterError);
}
