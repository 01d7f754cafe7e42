#include "hlab/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hlab/curvature.hpp"
#include "hlab/exterior.hpp"

namespace hlab {

namespace {

using Matrix = Eigen::MatrixXd;

// Upper-triangle coordinates of an antisymmetric matrix.
Eigen::VectorXd vectorize(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n * (n - 1) / 2);
  int k = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) v(k++) = m(a, b);
  }
  return v;
}

Matrix unvectorize(const Eigen::VectorXd& v, int n) {
  Matrix m = Matrix::Zero(n, n);
  int k = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      m(a, b) = v(k);
      m(b, a) = -v(k);
      ++k;
    }
  }
  return m;
}

struct Span {
  std::vector<Matrix> basis;
  std::vector<double> singular_values;
  int rank = 0;
};

Span span_of(const std::vector<Matrix>& mats, int n, double rank_tol) {
  Span out;
  if (mats.empty()) return out;
  Matrix stack(n * (n - 1) / 2, static_cast<int>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) stack.col(static_cast<int>(i)) = vectorize(mats[i]);
  // stack = R^T Q^T with Q orthonormal, so stack and R^T share singular values
  // and left singular vectors. Jacobi SVD stays accurate on the heavily
  // degenerate spectra seen here.
  Matrix reduced;
  if (stack.cols() > stack.rows()) {
    Eigen::HouseholderQR<Matrix> qr(stack.transpose());
    reduced = qr.matrixQR().topRows(stack.rows()).triangularView<Eigen::Upper>().transpose();
  } else {
    reduced = stack;
  }
  Eigen::JacobiSVD<Matrix> svd(reduced, Eigen::ComputeThinU);
  const Eigen::VectorXd s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double cutoff = rank_tol * (s.size() ? s(0) : 0.0);
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) ++out.rank;
  }
  for (int i = 0; i < out.rank; ++i) out.basis.push_back(unvectorize(svd.matrixU().col(i), n));
  return out;
}

struct Closure {
  Span span;
  int rounds = 0;
  bool stabilized = false;
};

Closure close_under_brackets(const std::vector<Matrix>& generators, int n, double rank_tol) {
  constexpr int kMaxRounds = 10;
  Closure c;
  c.span = span_of(generators, n, rank_tol);
  while (c.rounds < kMaxRounds) {
    ++c.rounds;
    std::vector<Matrix> next = c.span.basis;
    const auto& b = c.span.basis;
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) next.push_back(b[i] * b[j] - b[j] * b[i]);
    }
    Span s = span_of(next, n, rank_tol);
    const bool same = s.rank == c.span.rank;
    c.span = std::move(s);
    if (same) {
      c.stabilized = true;
      break;
    }
  }
  return c;
}

Poly pair_coefficient(const Rational& alpha2, int sign_r2, int alpha_multiple) {
  // sign_r2 * r^2 + alpha_multiple * alpha^2
  return Poly::monomial(2, Rational(sign_r2)) + Poly(Rational(alpha2 * alpha_multiple));
}

}  // namespace

KahlerForm build_omega(int n, const Rational& alpha, OmegaVariant variant) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const StructureAlgebra layout = abelian_algebra(n);
  const Rational alpha2 = alpha * alpha;
  Poly sigma_coeff = pair_coefficient(alpha2, 1, -1);    // r^2 - alpha^2
  Poly big_sigma_coeff = pair_coefficient(alpha2, -1, -1);  // -(r^2 + alpha^2)
  if (variant == OmegaVariant::CorruptSigma) sigma_coeff = pair_coefficient(alpha2, 1, -2);
  if (variant == OmegaVariant::SwapSigma) std::swap(sigma_coeff, big_sigma_coeff);

  using Term = FormExpr<Poly>::Term;
  auto pair = [](int i, int j) { return generator_bit(i) | generator_bit(j); };
  std::vector<Term> terms;
  const int lambda = layout.index_of({GeneratorKind::Lambda});
  terms.push_back({pair(0, lambda), Poly::monomial(1)});
  terms.push_back({pair(layout.index_of({GeneratorKind::Nu1}), layout.index_of({GeneratorKind::Nu2})),
                   Poly::monomial(2, 2)});
  for (int b = 1; b <= n; ++b) {
    terms.push_back({pair(layout.index_of({GeneratorKind::Sigma1, b}), layout.index_of({GeneratorKind::Sigma2, b})),
                     sigma_coeff});
    terms.push_back({pair(layout.index_of({GeneratorKind::BigSigma1, b}),
                          layout.index_of({GeneratorKind::BigSigma2, b})),
                     big_sigma_coeff});
  }
  return {n, alpha, variant, FormExpr<Poly>::from_terms(2, std::move(terms))};
}

ClosednessCheck check_closed(const KahlerForm& omega, const StructureAlgebra& alg) {
  if (alg.n() != omega.n) throw std::invalid_argument("Omega and algebra disagree on n");
  ClosednessCheck out;
  out.residual = d(omega.form, alg);
  out.closed = out.residual.is_zero();
  return out;
}

Rational top_power_coefficient(const KahlerForm& omega, const StructureAlgebra& alg, const Rational& r) {
  const FormExpr<Poly> top = top_power(omega.form, 2 * (omega.n + 1));
  GeneratorMask volume = 0;
  for (int a = 0; a < alg.frame_size(); ++a) volume |= generator_bit(a);
  return top.coefficient(volume).evaluate(r);
}

Matrix frame_components(const KahlerForm& omega, const MetricAnsatz& metric, const StructureAlgebra& alg,
                        double r) {
  const Frame frame = make_frame(metric, alg, r);
  const int dim = alg.frame_size();
  Matrix w = Matrix::Zero(dim, dim);
  for (const auto& t : omega.form.terms()) {
    const auto ij = mask_indices(t.mask);
    if (ij[1] >= dim) throw std::invalid_argument("Omega has vertical components");
    const double v = t.coeff.evaluate(r) / (frame.scale[ij[0]].value * frame.scale[ij[1]].value);
    w(ij[0], ij[1]) = v;
    w(ij[1], ij[0]) = -v;
  }
  return w;
}

ComplexStructure complex_structure(const KahlerForm& omega, const MetricAnsatz& metric,
                                   const StructureAlgebra& alg, double r) {
  const Matrix w = frame_components(omega, metric, alg, r);
  const int dim = static_cast<int>(w.rows());
  const Matrix m = w * w;
  const double scale2 = -m.trace() / (m * m).trace();
  if (!(scale2 > 0.0)) throw std::runtime_error("Omega is not negative definite when squared");
  ComplexStructure out;
  out.scale = std::sqrt(scale2);
  out.J = out.scale * w.transpose();
  const Matrix id = Matrix::Identity(dim, dim);
  out.square_residual = (out.J * out.J + id).cwiseAbs().maxCoeff();
  out.orthogonality_residual = (out.J.transpose() * out.J - id).cwiseAbs().maxCoeff();
  if (out.square_residual > 1e-10) {
    std::ostringstream os;
    os << "J^2 is not -1 after a single global scale; per-plane squares:";
    const Matrix sq = out.J * out.J;
    for (int a = 0; a < dim; ++a) os << ' ' << sq(a, a);
    throw std::runtime_error(os.str());
  }
  return out;
}

HolonomyEstimate holonomy_dimension(const MetricAnsatz& metric, const StructureAlgebra& alg,
                                    std::span<const double> points, double rank_tol) {
  if (points.empty()) throw std::invalid_argument("holonomy_dimension needs at least one point");
  if (!(rank_tol > 0.0)) throw std::invalid_argument("rank tolerance must be positive");
  const int dim = alg.frame_size();
  const int k = 2 * (alg.n() + 1);
  HolonomyEstimate est;
  est.rank_tol = rank_tol;
  est.target_su = k * k - 1;
  est.target_sp = (alg.n() + 1) * (2 * alg.n() + 3);
  est.so_dim = dim * (dim - 1) / 2;

  const KahlerForm omega = build_omega(alg.n(), Rational(metric.alpha()));
  std::vector<Matrix> generators;
  std::vector<Matrix> first_point;
  std::size_t commuting = 0;
  double curvature_scale = 1.0;
  std::vector<CurvatureData> curvature;
  std::vector<Matrix> complex_structures;
  for (double r : points) {
    curvature.push_back(compute_curvature(metric, alg, r));
    complex_structures.push_back(complex_structure(omega, metric, alg, r).J);
    curvature_scale = std::max(curvature_scale, 1.0 + curvature.back().max_riemann());
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Matrix& J = complex_structures[p];
    for (int c = 0; c < dim; ++c) {
      for (int e = c + 1; e < dim; ++e) {
        Matrix op = curvature[p].curvature_operator(c, e);
        const double comm = (J * op - op * J).cwiseAbs().maxCoeff();
        est.max_commutator = std::max(est.max_commutator, comm);
        if (comm <= 1e-9 * (1.0 + op.cwiseAbs().maxCoeff())) ++commuting;
        est.max_ricci_form_trace = std::max(est.max_ricci_form_trace, std::abs((J * op).trace()));
        if (p == 0) first_point.push_back(op);
        generators.push_back(std::move(op));
      }
    }
  }
  est.curvature_scale = curvature_scale;
  est.generator_count = static_cast<int>(generators.size());
  est.j_commuting_fraction = static_cast<double>(commuting) / static_cast<double>(generators.size());

  Closure closure = close_under_brackets(generators, dim, rank_tol);
  est.dim = closure.span.rank;
  est.rounds = closure.rounds;
  est.stabilized = closure.stabilized;
  est.singular_values = closure.span.singular_values;
  est.basis = std::move(closure.span.basis);
  const auto& s = est.singular_values;
  if (est.dim == 0) {
    est.spectral_gap = 0.0;
  } else if (est.dim < static_cast<int>(s.size()) && s[est.dim] > 0.0) {
    est.spectral_gap = s[est.dim - 1] / s[est.dim];
  } else {
    est.spectral_gap = std::numeric_limits<double>::infinity();
  }
  est.single_point_dim = close_under_brackets(first_point, dim, rank_tol).span.rank;
  est.inconclusive = !est.stabilized || est.spectral_gap < 1e3;
  return est;
}

}  // namespace hlab
