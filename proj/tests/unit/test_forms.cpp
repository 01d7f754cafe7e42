#include <random>

#include <gtest/gtest.h>

#include "hlab/exterior.hpp"
#include "random_forms.hpp"

using namespace hlab;
using hlab::testing::random_form;

namespace {

FormExpr<Rational> e(int i) { return FormExpr<Rational>::generator(i); }

}  // namespace

TEST(Wedge, AnticommutesOneForms) {
  EXPECT_EQ(wedge(e(1), e(0)), -wedge(e(0), e(1)));
  EXPECT_TRUE(wedge(e(3), e(3)).is_zero());
  const auto f = wedge(wedge(e(2), e(0)), e(1));
  EXPECT_EQ(f.coefficient(generator_bit(0) | generator_bit(1) | generator_bit(2)), Rational(1));
}

TEST(Wedge, LexicographicTermOrder) {
  EXPECT_TRUE(lex_less(0b0011, 0b0101));
  EXPECT_TRUE(lex_less(0b0101, 0b0110));
  EXPECT_FALSE(lex_less(0b0110, 0b0110));
  auto f = FormExpr<Rational>::from_terms(2, {{0b0110, 1}, {0b0011, 2}, {0b0101, 3}, {0b0011, -2}});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.terms()[0].mask, GeneratorMask{0b0101});
}

TEST(Wedge, GradedCommutativityAndAssociativityOnRandomForms) {
  std::mt19937_64 rng(11);
  const StructureAlgebra alg = build_algebra(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 1 + trial % 3, q = 1 + (trial / 3) % 3;
    const auto a = random_form(rng, alg, p);
    const auto b = random_form(rng, alg, q);
    const auto c = random_form(rng, alg, 2);
    const auto ab = wedge(a, b);
    EXPECT_EQ(ab, ((p * q) % 2 ? -wedge(b, a) : wedge(b, a)));
    EXPECT_EQ(wedge(ab, c), wedge(a, wedge(b, c)));
  }
}

TEST(TopPower, SquaresOfSymplecticPairs) {
  const auto omega = wedge(e(0), e(1)) + wedge(e(2), e(3));
  const auto sq = top_power(omega, 2);
  EXPECT_EQ(sq.coefficient(0b1111), Rational(2));
  EXPECT_THROW(top_power(e(0), 2), std::invalid_argument);
}

TEST(ExteriorDerivative, RadialCoefficientsAndClosedDr) {
  const StructureAlgebra alg = build_algebra(1);
  const auto dr = FormExpr<Poly>::generator(0);
  EXPECT_TRUE(d(dr, alg).is_zero());
  const auto f = FormExpr<Poly>::scalar(Poly::monomial(3));
  EXPECT_EQ(d(f, alg), FormExpr<Poly>::generator(0, Poly::monomial(2, 3)));
}

class DerivativeProperties : public ::testing::TestWithParam<int> {};

TEST_P(DerivativeProperties, DSquaredVanishes) {
  const StructureAlgebra alg = build_algebra(GetParam());
  std::mt19937_64 rng(100 + GetParam());
  for (int degree = 0; degree <= 3; ++degree) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_form(rng, alg, degree);
      EXPECT_TRUE(d(d(f, alg), alg).is_zero()) << "degree " << degree;
    }
  }
}

TEST_P(DerivativeProperties, LeibnizRule) {
  const StructureAlgebra alg = build_algebra(GetParam());
  std::mt19937_64 rng(200 + GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    const int p = trial % 3, q = 1 + trial % 2;
    const auto a = random_form(rng, alg, p);
    const auto b = random_form(rng, alg, q);
    const auto lhs = d(wedge(a, b), alg);
    auto rhs = wedge(d(a, alg), b);
    rhs += (p % 2 ? -wedge(a, d(b, alg)) : wedge(a, d(b, alg)));
    EXPECT_EQ(lhs, rhs);
  }
}

INSTANTIATE_TEST_SUITE_P(Ranks, DerivativeProperties, ::testing::Values(1, 2, 3));

TEST(TranslateBasis, DictionaryAndRoundTrip) {
  // lambda ^ sigma_1 = 2 sqrt2 eta_1 ^ eta_6, indices 1,4 -> 1,6.
  const auto f = wedge(FormExpr<NumDual>::generator(1), FormExpr<NumDual>::generator(4));
  const auto g = translate_basis(f, BasisDirection::CglpToEta, 1);
  EXPECT_NEAR(g.coefficient(generator_bit(1) | generator_bit(6)).value, 2.0 * std::sqrt(2.0), 1e-15);

  // nu_1 ^ nu_2 = eta_3 ^ eta_2 = -eta_2 ^ eta_3.
  const auto h = translate_basis(wedge(e(2), e(3)), BasisDirection::CglpToEta, 1);
  EXPECT_EQ(h.coefficient(generator_bit(2) | generator_bit(3)), Rational(-1));

  // Sigma_1 ^ Sigma_2 = 2 eta_4 ^ eta_5.
  const auto s = translate_basis(wedge(e(6), e(7)), BasisDirection::CglpToEta, 1);
  EXPECT_EQ(s.coefficient(generator_bit(4) | generator_bit(5)), Rational(2));

  // Two-forms with an even number of sigma/Sigma factors per term stay exact.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-5, 5);
  const GeneratorMask masks[] = {0b000000011, 0b000001100, 0b000110000, 0b011000000,
                                 0b001010000, 0b000000110, 0b000001001, 0b100000010};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<FormExpr<Rational>::Term> terms;
    for (GeneratorMask m : masks) terms.push_back({m, Rational(coef(rng))});
    const auto form = FormExpr<Rational>::from_terms(2, std::move(terms));
    const auto back = translate_basis(translate_basis(form, BasisDirection::CglpToEta, 1),
                                      BasisDirection::EtaToCglp, 1);
    EXPECT_EQ(back, form);
  }
  EXPECT_THROW(translate_basis(e(1), BasisDirection::CglpToEta, 2), std::invalid_argument);
  EXPECT_THROW(translate_basis(e(4), BasisDirection::CglpToEta, 1), std::domain_error);
}
