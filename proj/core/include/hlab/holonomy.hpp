#pragma once

// The Kaehler form
//
//   Omega = r dr ^ lambda + 2 r^2 nu_1 ^ nu_2
//           - (r^2 + alpha^2) sum_b Sigma_1b ^ Sigma_2b
//           + (r^2 - alpha^2) sum_b sigma_1b ^ sigma_2b,
//
// its exact closedness and nondegeneracy, the compatible complex structure,
// and a numerical estimate of the holonomy algebra from curvature operators.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hlab/forms.hpp"
#include "hlab/liealg.hpp"
#include "hlab/metrics.hpp"

namespace hlab {

// Deliberately wrong variants serve as negative controls.
enum class OmegaVariant {
  Canonical,
  CorruptSigma,  // sigma coefficient r^2 - 2 alpha^2
  SwapSigma,     // sigma and Sigma coefficients exchanged
};

struct KahlerForm {
  int n = 1;
  Rational alpha;
  OmegaVariant variant = OmegaVariant::Canonical;
  FormExpr<Poly> form;
};

KahlerForm build_omega(int n, const Rational& alpha, OmegaVariant variant = OmegaVariant::Canonical);

struct ClosednessCheck {
  bool closed = false;
  FormExpr<Poly> residual;  // d Omega
};

ClosednessCheck check_closed(const KahlerForm& omega, const StructureAlgebra& alg);

// Coefficient of dr ^ lambda ^ nu_1 ^ ... (all frame generators in order) in
// Omega^(2n+2), at r.
Rational top_power_coefficient(const KahlerForm& omega, const StructureAlgebra& alg, const Rational& r);

// Omega in the orthonormal frame: W_ab = Omega(e_a, e_b).
Eigen::MatrixXd frame_components(const KahlerForm& omega, const MetricAnsatz& metric,
                                 const StructureAlgebra& alg, double r);

struct ComplexStructure {
  Eigen::MatrixXd J;          // J(a, b) = scale * W(b, a), so g(J X, Y) = scale * Omega(X, Y)
  double scale = 0.0;         // least-squares fit of J^2 = -1
  double square_residual = 0.0;  // max |J^2 + 1|
  double orthogonality_residual = 0.0;  // max |J^T J - 1|
};

// Throws CurvatureError-free std::runtime_error if J^2 is not proportional
// to -1 on every invariant 2-plane.
ComplexStructure complex_structure(const KahlerForm& omega, const MetricAnsatz& metric,
                                   const StructureAlgebra& alg, double r);

struct HolonomyEstimate {
  int dim = 0;
  int single_point_dim = 0;
  int target_su = 0;
  int target_sp = 0;
  int so_dim = 0;
  int generator_count = 0;
  int rounds = 0;
  double rank_tol = 0.0;
  double spectral_gap = 0.0;  // last kept / first dropped singular value
  bool stabilized = false;
  bool inconclusive = false;
  std::vector<double> singular_values;  // of the final closed span, descending
  std::vector<Eigen::MatrixXd> basis;   // orthonormal basis of the span
  double j_commuting_fraction = 0.0;    // generators with |[J, R]| <= 1e-9 (1 + |R|)
  double max_commutator = 0.0;
  double max_ricci_form_trace = 0.0;    // max |tr(J R(e_a, e_b))|
  double curvature_scale = 0.0;         // 1 + max |Riem| over the points
};

// Curvature operators R(e_a, e_b) at every point, closed under commutators
// until the numerical rank (singular values above rank_tol * sigma_max)
// stops changing. At most 10 closure rounds.
HolonomyEstimate holonomy_dimension(const MetricAnsatz& metric, const StructureAlgebra& alg,
                                    std::span<const double> points, double rank_tol = 1e-8);

}  // namespace hlab
