#include <complex>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hlab/liealg.hpp"

using namespace hlab;

namespace {

using Cx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Coordinates of a traceless Hermitian matrix H (the value of L = i g^-1 dg)
// in the real coframe; matrix index 0 is "1", 1 is "2", 1 + b is b.
class MatrixOracle {
 public:
  explicit MatrixOracle(int n) : n_(n), alg_(build_algebra(n)) {}

  Eigen::VectorXd coords(const CMatrix& h) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(alg_.size());
    c(1) = (h(0, 0) - h(1, 1)).real();
    c(2) = h(0, 1).real();
    c(3) = h(0, 1).imag();
    for (int b = 1; b <= n_; ++b) {
      c(4 + 2 * (b - 1)) = h(0, 1 + b).real();
      c(5 + 2 * (b - 1)) = h(0, 1 + b).imag();
      c(4 + 2 * n_ + 2 * (b - 1)) = h(1, 1 + b).real();
      c(5 + 2 * n_ + 2 * (b - 1)) = h(1, 1 + b).imag();
      c(4 + 4 * n_ + (b - 1)) = h(1 + b, 1 + b).real();
    }
    int k = 4 + 5 * n_;
    for (int b = 1; b <= n_; ++b) {
      for (int g = b + 1; g <= n_; ++g) {
        c(k++) = h(1 + b, 1 + g).real();
        c(k++) = h(1 + b, 1 + g).imag();
      }
    }
    return c;
  }

  // The matrix whose only nonzero coordinate is generator k.
  CMatrix basis(int k) const {
    const int m = n_ + 2;
    CMatrix h = CMatrix::Zero(m, m);
    auto off = [&](int a, int b, bool imag) {
      h(a, b) = imag ? Cx(0, 1) : Cx(1, 0);
      h(b, a) = std::conj(h(a, b));
    };
    if (k == 1) {
      h(0, 0) = 0.5;
      h(1, 1) = -0.5;
    } else if (k == 2 || k == 3) {
      off(0, 1, k == 3);
    } else if (k < 4 + 2 * n_) {
      off(0, 2 + (k - 4) / 2, (k - 4) % 2 == 1);
    } else if (k < 4 + 4 * n_) {
      off(1, 2 + (k - 4 - 2 * n_) / 2, (k - 4 - 2 * n_) % 2 == 1);
    } else if (k < 4 + 5 * n_) {
      const int b = k - (4 + 4 * n_) + 1;
      h(1 + b, 1 + b) = 1.0;
      h(0, 0) = -0.5;
      h(1, 1) = -0.5;
    } else {
      int idx = 4 + 5 * n_;
      for (int b = 1; b <= n_; ++b) {
        for (int g = b + 1; g <= n_; ++g, idx += 2) {
          if (k == idx || k == idx + 1) off(1 + b, 1 + g, k == idx + 1);
        }
      }
    }
    return h;
  }

  // d e^k (X_i, X_j) = -e^k([X_i, X_j]) = e^k(i [H_i, H_j]).
  double derivative(int k, int i, int j) const {
    const CMatrix a = basis(i), b = basis(j);
    return coords(Cx(0, 1) * (a * b - b * a))(k);
  }

  const StructureAlgebra& algebra() const { return alg_; }

 private:
  int n_;
  StructureAlgebra alg_;
};

}  // namespace

class AlgebraByRank : public ::testing::TestWithParam<int> {};

TEST_P(AlgebraByRank, CoordinatesInvertBasis) {
  const MatrixOracle oracle(GetParam());
  for (int k = 1; k < oracle.algebra().size(); ++k) {
    const Eigen::VectorXd c = oracle.coords(oracle.basis(k));
    for (int j = 0; j < c.size(); ++j) EXPECT_DOUBLE_EQ(c(j), j == k ? 1.0 : 0.0) << k << ' ' << j;
    EXPECT_NEAR(std::abs(oracle.basis(k).trace()), 0.0, 1e-15);
  }
}

TEST_P(AlgebraByRank, DerivativesMatchMatrixCommutators) {
  const MatrixOracle oracle(GetParam());
  const StructureAlgebra& alg = oracle.algebra();
  for (int k = 1; k < alg.size(); ++k) {
    const auto& dk = alg.exterior_derivative(k);
    for (int i = 1; i < alg.size(); ++i) {
      for (int j = i + 1; j < alg.size(); ++j) {
        const double expected = oracle.derivative(k, i, j);
        const double got = to_double(dk.coefficient(generator_bit(i) | generator_bit(j)));
        EXPECT_NEAR(got, expected, 1e-12) << alg.name(k) << " on " << alg.name(i) << "^" << alg.name(j);
      }
    }
  }
}

TEST_P(AlgebraByRank, BracketIsMinusDerivativeCoefficient) {
  const StructureAlgebra alg = build_algebra(GetParam());
  for (int i = 0; i < alg.size(); ++i) {
    for (int j = 0; j < alg.size(); ++j) {
      for (const auto& e : alg.bracket(i, j)) {
        const GeneratorMask m = generator_bit(i) | generator_bit(j);
        const Rational d = alg.exterior_derivative(e.k).coefficient(m);
        EXPECT_EQ(e.coeff, i < j ? Rational(-d) : d);
      }
    }
  }
}

TEST_P(AlgebraByRank, JacobiAndReductive) {
  const StructureAlgebra alg = build_algebra(GetParam());
  EXPECT_EQ(jacobi_residual(alg), Rational(0));
  EXPECT_TRUE(is_reductive(alg));
  EXPECT_EQ(alg.size(), 1 + (GetParam() + 2) * (GetParam() + 2) - 1);
  EXPECT_EQ(alg.frame_size(), 4 * GetParam() + 4);
  EXPECT_EQ(alg.vertical_count(), GetParam() * GetParam());
}

INSTANTIATE_TEST_SUITE_P(Ranks, AlgebraByRank, ::testing::Values(1, 2, 3, 4));

// d lambda = 4 nu_1^nu_2 + 2 sum sigma_1b^sigma_2b - 2 sum Sigma_1b^Sigma_2b,
// worked out by hand from dL = i L ^ L.
TEST(Algebra, LambdaDerivative) {
  for (int n = 1; n <= 3; ++n) {
    const StructureAlgebra alg = build_algebra(n);
    std::vector<FormExpr<Rational>::Term> t{{generator_bit(2) | generator_bit(3), 4}};
    for (int b = 1; b <= n; ++b) {
      const int s = alg.index_of({GeneratorKind::Sigma1, b});
      const int S = alg.index_of({GeneratorKind::BigSigma1, b});
      t.push_back({generator_bit(s) | generator_bit(s + 1), 2});
      t.push_back({generator_bit(S) | generator_bit(S + 1), -2});
    }
    EXPECT_EQ(alg.exterior_derivative(1), FormExpr<Rational>::from_terms(2, t)) << "n = " << n;
  }
}

TEST(Algebra, AbelianControlIsFlat) {
  const StructureAlgebra alg = abelian_algebra(2);
  for (int k = 0; k < alg.size(); ++k) EXPECT_TRUE(alg.exterior_derivative(k).is_zero());
  EXPECT_EQ(jacobi_residual(alg), Rational(0));
}

TEST(Algebra, RankLimits) {
  EXPECT_THROW(build_algebra(0), std::invalid_argument);
  EXPECT_THROW(build_algebra(7), std::invalid_argument);
  EXPECT_NO_THROW(build_algebra(6));
}

TEST(Algebra, DumpIsDeterministicAndNamed) {
  const auto a = dump_algebra(build_algebra(1));
  EXPECT_EQ(a.dump(), dump_algebra(build_algebra(1)).dump());
  EXPECT_EQ(a["n"], 1);
  EXPECT_EQ(a["generators"][1], "lambda");
  EXPECT_EQ(a["derivatives"].size(), 9u);
  EXPECT_EQ(a["derivatives"][0]["terms"].size(), 0u);
  EXPECT_EQ(a["derivatives"][1]["generator"], "lambda");
}
