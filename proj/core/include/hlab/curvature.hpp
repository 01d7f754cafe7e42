#pragma once

// Levi-Civita connection and curvature of a cohomogeneity-one ansatz in the
// orthonormal coframe theta^0 = sqrt(grr) dr, theta^a = f_a(r) e^a, computed on
// the group manifold with the vertical (isotropy) generators carried along.
// Connection 1-forms and curvature 2-forms are FormExpr<NumDual> over the full
// generator set; radial derivatives come from forward propagation.

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hlab/forms.hpp"
#include "hlab/liealg.hpp"
#include "hlab/metrics.hpp"

namespace hlab {

struct Frame {
  double r = 0.0;
  // theta^a = scale[a] e^a for the radial and horizontal generators.
  std::vector<NumDual> scale;
};

// Throws std::domain_error where the ansatz is singular or undefined.
Frame make_frame(const MetricAnsatz& metric, const StructureAlgebra& alg, double r);

class CurvatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CurvatureData {
 public:
  explicit CurvatureData(int dim = 0);

  int dim() const { return dim_; }

  // omega^a_b (orthonormal indices) as a 1-form over all generators.
  const FormExpr<NumDual>& connection_form(int a, int b) const { return omega_[a * dim_ + b]; }
  // Gamma_abc = omega_ab(e_c), frame part only.
  double gamma(int a, int b, int c) const { return gamma_[(a * dim_ + b) * dim_ + c]; }

  bool has_curvature() const { return !riemann_.empty(); }
  double R(int a, int b, int c, int d) const {
    return riemann_[((a * dim_ + b) * dim_ + c) * dim_ + d];
  }
  // (R(e_c, e_d))_ab = R_abcd, an element of so(dim).
  Eigen::MatrixXd curvature_operator(int c, int d) const;

  const Eigen::MatrixXd& ricci() const { return ricci_; }
  double scalar() const { return scalar_; }
  double max_riemann() const { return max_riemann_; }
  // Largest |vertical component| of a curvature 2-form.
  double horizontality_residual() const { return horizontality_; }

 private:
  friend CurvatureData connection(const Frame&, const StructureAlgebra&);
  friend CurvatureData riemann(const Frame&, const StructureAlgebra&);

  int dim_;
  std::vector<FormExpr<NumDual>> omega_;
  std::vector<double> gamma_;
  std::vector<double> riemann_;
  Eigen::MatrixXd ricci_;
  double scalar_ = 0.0;
  double max_riemann_ = 0.0;
  double horizontality_ = 0.0;
};

// Torsion-free metric connection: the unique antisymmetric omega with
// d theta^a = -omega^a_b ^ theta^b.
CurvatureData connection(const Frame& frame, const StructureAlgebra& alg);

// Connection plus Omega^a_b = d omega^a_b + omega^a_c ^ omega^c_b.
CurvatureData riemann(const Frame& frame, const StructureAlgebra& alg);

inline CurvatureData compute_curvature(const MetricAnsatz& metric, const StructureAlgebra& alg, double r) {
  return riemann(make_frame(metric, alg, r), alg);
}

// max |d theta^a + omega^a_b ^ theta^b|.
double structure_equation_residual(const CurvatureData& data, const Frame& frame, const StructureAlgebra& alg);
// max |omega_ab + omega_ba| over all coefficients.
double connection_antisymmetry_residual(const CurvatureData& data);
// max over R_abcd + R_bacd, R_abcd + R_abdc, R_abcd - R_cdab.
double riemann_symmetry_residual(const CurvatureData& data);
// max |R_abcd + R_acdb + R_adbc|.
double bianchi_residual(const CurvatureData& data);

// Ricci projected on the five coefficient classes of the ansatz, in the
// orthonormal frame. The *_coframe values are the same tensor written as
// coefficients of |sigma|^2, |Sigma|^2, |nu|^2, lambda^2.
struct RicciComponents {
  double r0 = 0.0;  // dt^2
  double rf = 0.0;  // lambda
  double rc = 0.0;  // nu
  double ra = 0.0;  // sigma
  double rb = 0.0;  // Sigma
  double rf_coframe = 0.0;
  double rc_coframe = 0.0;
  double ra_coframe = 0.0;
  double rb_coframe = 0.0;
  double off_diagonal = 0.0;  // largest off-diagonal |Ric_ab|
  double class_spread = 0.0;  // largest deviation within a class
};

// Throws CurvatureError when Ric is not diagonal with the ansatz degeneracies
// to within tol * (1 + max|Riem|).
RicciComponents ricci_components(const CurvatureData& data, const StructureAlgebra& alg, const Frame& frame,
                                 double tol = 1e-9);

// Orthonormal components scaled by their closed-form denominators:
//   sigma = R_a (r^2-a^2)^2 (r^2+a^2),  big_sigma = R_b (r^2+a^2)^2 (r^2-a^2),
//   nu = R_c r^2 (r^4-a^4),  a = alpha.
// All three equal -Q~ for any profile u (see ode_residual).
struct RicciProducts {
  double sigma = 0.0;
  double big_sigma = 0.0;
  double nu = 0.0;
};

RicciProducts ricci_products(const RicciComponents& c, double r, double alpha);

// max |x - y| / max(|x|, |y|) over the three pairs; 0 when all vanish.
double pairwise_spread(double x, double y, double z);

// Ricci structure of the family ansatz at one point, with the residuals of
// the profile u = 1/grr.
struct RicciStructure {
  RicciComponents components;
  RicciProducts products;
  double q_tilde = 0.0;     // ode_residual
  double printed_q = 0.0;   // printed_residual
  double max_ricci = 0.0;   // max |Ric_ab| / (1 + max |Riem|)
  double max_riemann = 0.0;
  double horizontality = 0.0;
  double spread = 0.0;          // pairwise_spread(sigma, big_sigma, nu)
  double printed_spread = 0.0;  // pairwise_spread(sigma, -big_sigma, nu)
  double common = 0.0;          // mean of the three products
};

RicciStructure ricci_structure(const MetricAnsatz& metric, const StructureAlgebra& alg, double r,
                               double tol = 1e-9);

// K(a, b) = R_abab.
std::vector<double> sectional_samples(const CurvatureData& data, std::span<const std::pair<int, int>> pairs);

}  // namespace hlab
