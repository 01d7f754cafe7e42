#pragma once

// Closed-form metrics of cohomogeneity one on (1, inf) x SU(n+2)/S(U(n)xU(1)):
//
//   g = grr dr^2 + f_lambda2 lambda^2 + c2 (nu_1^2 + nu_2^2)
//       + a2 sum_b (sigma_1b^2 + sigma_2b^2) + b2 sum_b (Sigma_1b^2 + Sigma_2b^2)
//
// and the radial profile u = W^2 that makes the family Ricci-flat:
//
//   u r^4 (r^4 - alpha^4)^n = (r^4 - alpha^4)^(n+1) + C,  C = -(1 - alpha^4)^(n+1).

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlab/scalar.hpp"

namespace hlab {

template <class T>
struct AnsatzCoefficients {
  T grr;        // dr^2
  T f_lambda2;  // lambda^2
  T c2;         // nu_1^2 + nu_2^2
  T a2;         // sigma_{1b}^2 + sigma_{2b}^2
  T b2;         // Sigma_{1b}^2 + Sigma_{2b}^2
};

using AnsatzPoint = AnsatzCoefficients<NumDual>;

// Coefficients of the family ansatz for a given profile u and alpha^2.
template <class T>
AnsatzCoefficients<T> ansatz_from_profile(const T& u, const T& r, const T& alpha2) {
  const T r2 = r * r;
  return {T(1) / u, u * r2 / T(4), r2, (r2 - alpha2) / T(2), (r2 + alpha2) / T(2)};
}

template <class T>
T closed_form_u(const T& r, int n, const T& alpha4, const T& C) {
  const T r4 = r * r * r * r;
  const T p = r4 - alpha4;
  return (pow(p, n + 1) + C) / (r4 * pow(p, n));
}

// Q~ = u'(r^5 - r a) - 4 u a - 4(n+1)(r^4 - a - r^4 u), a = alpha^4.
template <class T>
T ode_residual_formula(const T& u, const T& du, const T& r, int n, const T& alpha4) {
  const T r4 = r * r * r * r;
  return du * (r4 * r - r * alpha4) - T(4) * u * alpha4 -
         T(4 * (n + 1)) * (r4 - alpha4 - r4 * u);
}

class MetricAnsatz {
 public:
  using Evaluator = std::function<AnsatzPoint(double r)>;

  MetricAnsatz(int n, double alpha, double r_min, std::string label, Evaluator eval);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double r_min() const { return r_min_; }
  const std::string& label() const { return label_; }

  // Coefficients with first and second r-derivatives. Throws
  // std::domain_error for r <= r_min or a non-positive coefficient.
  AnsatzPoint at(double r) const;

 private:
  int n_;
  double alpha_;
  double r_min_;
  std::string label_;
  Evaluator eval_;
};

void validate_family_parameters(int n, double alpha);

double canonical_constant(int n, double alpha);
Rational canonical_constant(int n, const Rational& alpha);

class RadialProfile {
 public:
  RadialProfile(int n, double alpha, double C);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double constant() const { return C_; }

  // u = W^2 with u', u''. Throws std::domain_error at r^4 = alpha^4.
  NumDual u(double r) const;

 private:
  int n_;
  double alpha_;
  double C_;
};

RadialProfile profile_W(int n, double alpha, double C);
inline RadialProfile canonical_profile(int n, double alpha) {
  return profile_W(n, alpha, canonical_constant(n, alpha));
}
RationalFunction profile_W_exact(int n, const Rational& alpha, const Rational& C);

MetricAnsatz family_G(int n, double alpha);
AnsatzCoefficients<RationalFunction> family_G_exact(int n, const Rational& alpha);

// The family ansatz with an arbitrary profile u(r); used for negative controls.
MetricAnsatz ansatz_with_profile(int n, double alpha, std::function<NumDual(double)> u,
                                 std::string label, double r_min = 1.0);

// Q~ evaluated on a profile. u.d1 must hold u'(r).
double ode_residual(int n, double alpha, const NumDual& u, double r);
double ode_residual(const RadialProfile& profile, double r);
RationalFunction ode_residual_exact(int n, const Rational& alpha, const RationalFunction& u);

// Alternative residual form with W = sqrt(u),
// dW/dr and all plus signs. Kept for comparison reports only.
double printed_residual(int n, double alpha, const NumDual& u, double r);

// ---- reference metrics in the eta coframe (n = 1) -----------------------

// Coefficients of dr^2, eta_1^2, eta_2^2 + eta_3^2, eta_4^2 + eta_5^2,
// eta_6^2 + eta_7^2.
struct EtaCoefficients {
  RationalFunction grr;
  RationalFunction eta1;
  RationalFunction eta23;
  RationalFunction eta45;
  RationalFunction eta67;
};

// Translate ansatz coefficients under lambda = 2 eta_1, nu = eta_{3,2},
// Sigma = sqrt2 eta_{4,5}, sigma = sqrt2 eta_{6,7}.
EtaCoefficients to_eta_coefficients(const AnsatzCoefficients<RationalFunction>& c);

// The eight-dimensional family, written with D = r^8 - 2 a (r^4 - 1) - 1.
EtaCoefficients eight_dimensional_family(const Rational& alpha);

// dr^2/(1 - r^-4) + (1 - r^-4) r^2/4 lambda^2 + r^2 |nu|^2
// + (r^2+1)/2 |Sigma|^2 + (r^2-1)/2 |sigma|^2, identical for every n.
AnsatzCoefficients<RationalFunction> hyperkahler_metric();

// Radial and fibre coefficients of the Calabi metric on the (m+1)-th power of
// the canonical bundle: [1 - rho^-(2m+2)]^-1 and [1 - rho^-(2m+2)] rho^2.
struct CalabiCoefficients {
  RationalFunction radial;
  RationalFunction fiber;
};
CalabiCoefficients calabi_metric(int m);

// ---- radial ODE ----------------------------------------------------------

class OdeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OdeSample {
  double r;
  double u;
};

struct OdeResult {
  std::vector<OdeSample> samples;
  double u_end = 0.0;
  double u_closed_end = 0.0;  // closed form with the constant fitted at r0
  double fitted_constant = 0.0;
  double relative_error = 0.0;  // |u_end - u_closed_end| / (1 + |u_closed_end|)
  int steps = 0;
  int rejected = 0;
};

// C such that the closed form passes through (r, u).
double fit_constant(int n, double alpha, double r, double u);

// Integrates Q~ = 0 as an explicit ODE for u from (r0, u0) to r1 with an
// adaptive Dormand-Prince 5(4) stepper. Throws OdeError on step-size
// underflow (e.g. when the path crosses r^4 = alpha^4).
OdeResult integrate_ode(int n, double alpha, double r0, double u0, double r1, double tol);

struct BoundarySlope {
  double slope = 0.0;         // Richardson-extrapolated
  double analytic = 0.0;      // u'(1)/2 from the closed form
  double error_estimate = 0.0;
  bool hyperkahler_bolt = false;  // alpha = 1
};

// lim_{r->1+} d/dt sqrt(g(eta_1, eta_1)) with dt = sqrt(grr) dr on the
// canonical profile.
BoundarySlope boundary_slope(int n, double alpha);

// ---- profile files -------------------------------------------------------

struct ProfileSample {
  double r = 0.0;
  double u = 0.0;
  std::optional<double> du;
  std::optional<double> d2u;
};

// {n, alpha, C, samples: [{r, u, du?, d2u?}]}. Missing derivatives are
// recovered from a local polynomial fit through nearby samples.
struct SampledProfile {
  int n = 1;
  double alpha = 0.0;
  double C = 0.0;
  std::string label;
  std::vector<ProfileSample> samples;

  NumDual at(double r) const;
  std::vector<double> radii() const;
};

SampledProfile profile_from_json(const nlohmann::json& j);
nlohmann::ordered_json profile_to_json(const SampledProfile& p);
SampledProfile sample_profile(int n, double alpha, double C, const std::function<NumDual(double)>& u,
                              std::span<const double> radii, std::string label);

}  // namespace hlab
