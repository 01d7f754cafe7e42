#include <cmath>

#include <gtest/gtest.h>

#include "param_name.hpp"
#include "hlab/holonomy.hpp"

using namespace hlab;

namespace {

const Rational kAlphas[] = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(9, 10), Rational(1)};

// Omega^(2n+2) = (2n+2)! r (2 r^2) [(r^2 - a^2)(-(r^2 + a^2))]^n times the
// ordered frame volume: each factor pairs adjacent generators, in order.
Rational top_power_oracle(int n, const Rational& a, const Rational& r) {
  Rational f = 1;
  for (int k = 2; k <= 2 * n + 2; ++k) f *= k;
  const Rational r2 = r * r, a2 = a * a;
  Rational pair = (r2 - a2) * (-(r2 + a2));
  return f * r * 2 * r2 * pow(pair, static_cast<unsigned>(n));
}

}  // namespace

TEST(Kahler, OmegaIsClosedExactly) {
  for (int n = 1; n <= 4; ++n) {
    const StructureAlgebra alg = build_algebra(n);
    for (const auto& a : kAlphas) {
      const ClosednessCheck c = check_closed(build_omega(n, a), alg);
      EXPECT_TRUE(c.closed) << "n=" << n << " alpha=" << to_string(a) << ": "
                            << c.residual.render([&](int i) { return alg.name(i); });
    }
  }
}

TEST(Kahler, CorruptedVariantsAreNotClosed) {
  const StructureAlgebra alg = build_algebra(2);
  for (auto v : {OmegaVariant::CorruptSigma, OmegaVariant::SwapSigma}) {
    EXPECT_FALSE(check_closed(build_omega(2, Rational(1, 2), v), alg).closed);
  }
  // At alpha = 0 the corruption is invisible.
  EXPECT_TRUE(check_closed(build_omega(2, Rational(0), OmegaVariant::CorruptSigma), alg).closed);
}

TEST(Kahler, TopPowerGoldenValue) {
  // n = 1, r = 2, alpha = 1/2: 4! * 2 * 8 * (15/4) * (-17/4) = -6120.
  const StructureAlgebra alg = build_algebra(1);
  EXPECT_EQ(top_power_coefficient(build_omega(1, Rational(1, 2)), alg, Rational(2)), Rational(-6120));
}

TEST(Kahler, TopPowerMatchesOracleWithConstantSign) {
  for (int n = 1; n <= 3; ++n) {
    const StructureAlgebra alg = build_algebra(n);
    for (const auto& a : kAlphas) {
      const KahlerForm omega = build_omega(n, a);
      int sign = 0;
      for (const Rational r : {Rational(11, 10), Rational(2), Rational(7)}) {
        const Rational got = top_power_coefficient(omega, alg, r);
        EXPECT_EQ(got, top_power_oracle(n, a, r));
        if (sign == 0) sign = sgn(got);
        EXPECT_EQ(sgn(got), sign);
        EXPECT_NE(sign, 0);
      }
    }
  }
}

TEST(Kahler, ComplexStructureIsOrthogonalWithHalfScale) {
  for (int n : {1, 2}) {
    const StructureAlgebra alg = build_algebra(n);
    for (double alpha : {0.0, 0.5, 1.0}) {
      const KahlerForm omega = build_omega(n, Rational(alpha));
      for (double r : {1.2, 2.0, 4.0}) {
        const ComplexStructure j = complex_structure(omega, family_G(n, alpha), alg, r);
        EXPECT_NEAR(j.scale, 0.5, 1e-12);
        EXPECT_LE(j.square_residual, 1e-12);
        EXPECT_LE(j.orthogonality_residual, 1e-12);
        EXPECT_NEAR(std::abs(j.J(1, 0)), 1.0, 1e-12);  // J e_r = +-e_lambda
      }
    }
  }
}

TEST(Kahler, CorruptedFormHasNoCompatibleStructure) {
  const StructureAlgebra alg = build_algebra(1);
  EXPECT_THROW(complex_structure(build_omega(1, Rational(1, 2), OmegaVariant::CorruptSigma), family_G(1, 0.5), alg,
                                 2.0),
               std::runtime_error);
}

struct HoloCase {
  int n;
  double alpha;
  int dim;
};

class HolonomyDimension : public ::testing::TestWithParam<HoloCase> {};

TEST_P(HolonomyDimension, MatchesTarget) {
  const auto [n, alpha, dim] = GetParam();
  const double points[] = {1.3, 2.1, 3.7};
  const HolonomyEstimate h = holonomy_dimension(family_G(n, alpha), build_algebra(n), points);
  EXPECT_EQ(h.dim, dim);
  EXPECT_EQ(h.single_point_dim, dim);
  EXPECT_GE(h.spectral_gap, 1e3);
  EXPECT_TRUE(h.stabilized);
  EXPECT_FALSE(h.inconclusive);
  EXPECT_DOUBLE_EQ(h.j_commuting_fraction, 1.0);
  EXPECT_LE(h.max_ricci_form_trace, 1e-9 * h.curvature_scale);
  EXPECT_EQ(static_cast<int>(h.basis.size()), dim);
}

INSTANTIATE_TEST_SUITE_P(Family, HolonomyDimension,
                         ::testing::Values(HoloCase{1, 0.0, 15}, HoloCase{1, 0.5, 15}, HoloCase{1, 1.0, 10},
                                           HoloCase{2, 0.0, 35}, HoloCase{2, 0.6, 35}, HoloCase{2, 1.0, 21}),
                         [](const auto& info) { return hlab::testing::param_name(info.param.n, info.param.alpha); });

// Omega does not involve u, so a non-solution profile is still Kaehler but
// not Ricci-flat: the span fills u(2n+2).
TEST(Holonomy, NonSolutionFillsTheUnitaryAlgebra) {
  const MetricAnsatz g = ansatz_with_profile(1, 0.5, [](double r) {
    const NumDual x = NumDual::variable(r);
    return NumDual(1.0) - NumDual(1.0) / (x * x);
  }, "1-r^-2");
  const double points[] = {1.3, 2.1, 3.7};
  const HolonomyEstimate h = holonomy_dimension(g, build_algebra(1), points);
  EXPECT_EQ(h.dim, 16);
  EXPECT_DOUBLE_EQ(h.j_commuting_fraction, 1.0);
  EXPECT_GT(h.max_ricci_form_trace, 1e-3);
}

TEST(Holonomy, ArgumentChecks) {
  const StructureAlgebra alg = build_algebra(1);
  EXPECT_THROW(holonomy_dimension(family_G(1, 0.5), alg, {}), std::invalid_argument);
  const double points[] = {2.0};
  EXPECT_THROW(holonomy_dimension(family_G(1, 0.5), alg, points, 0.0), std::invalid_argument);
}
