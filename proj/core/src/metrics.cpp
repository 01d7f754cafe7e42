#include "hlab/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace hlab {

namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

MetricAnsatz::MetricAnsatz(int n, double alpha, double r_min, std::string label, Evaluator eval)
    : n_(n), alpha_(alpha), r_min_(r_min), label_(std::move(label)), eval_(std::move(eval)) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!eval_) throw std::invalid_argument("empty ansatz evaluator");
}

AnsatzPoint MetricAnsatz::at(double r) const {
  if (!(r > r_min_)) {
    throw std::domain_error("r = " + format_double(r) + " outside the open domain r > " +
                            format_double(r_min_));
  }
  const AnsatzPoint p = eval_(r);
  for (double v : {p.grr.value, p.f_lambda2.value, p.c2.value, p.a2.value, p.b2.value}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error("non-positive metric coefficient at r = " + format_double(r));
    }
  }
  return p;
}

void validate_family_parameters(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

double canonical_constant(int n, double alpha) {
  return -std::pow(1.0 - std::pow(alpha, 4u), n + 1);
}

Rational canonical_constant(int n, const Rational& alpha) {
  return -pow(Rational(1) - pow(alpha, 4u), static_cast<unsigned>(n + 1));
}

RadialProfile::RadialProfile(int n, double alpha, double C) : n_(n), alpha_(alpha), C_(C) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

NumDual RadialProfile::u(double r) const {
  const double a4 = std::pow(alpha_, 4);
  if (std::pow(r, 4) == a4) throw std::domain_error("profile evaluated at r^4 = alpha^4");
  return closed_form_u(NumDual::variable(r), n_, NumDual(a4), NumDual(C_));
}

RadialProfile profile_W(int n, double alpha, double C) { return RadialProfile(n, alpha, C); }

RationalFunction profile_W_exact(int n, const Rational& alpha, const Rational& C) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return closed_form_u(RationalFunction::variable(), n, RationalFunction(pow(alpha, 4u)),
                       RationalFunction(C));
}

MetricAnsatz family_G(int n, double alpha) {
  validate_family_parameters(n, alpha);
  const RadialProfile profile = canonical_profile(n, alpha);
  const double alpha2 = alpha * alpha;
  std::ostringstream label;
  label << "G(n=" << n << ", alpha=" << format_double(alpha) << ")";
  return MetricAnsatz(n, alpha, 1.0, label.str(), [profile, alpha2](double r) {
    return ansatz_from_profile(profile.u(r), NumDual::variable(r), NumDual(alpha2));
  });
}

AnsatzCoefficients<RationalFunction> family_G_exact(int n, const Rational& alpha) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha must lie in [0, 1]");
  const RationalFunction u = profile_W_exact(n, alpha, canonical_constant(n, alpha));
  return ansatz_from_profile(u, RationalFunction::variable(), RationalFunction(Rational(alpha * alpha)));
}

MetricAnsatz ansatz_with_profile(int n, double alpha, std::function<NumDual(double)> u,
                                 std::string label, double r_min) {
  validate_family_parameters(n, alpha);
  const double alpha2 = alpha * alpha;
  return MetricAnsatz(n, alpha, r_min, std::move(label), [u = std::move(u), alpha2](double r) {
    return ansatz_from_profile(u(r), NumDual::variable(r), NumDual(alpha2));
  });
}

double ode_residual(int n, double alpha, const NumDual& u, double r) {
  return ode_residual_formula(u.value, u.d1, r, n, std::pow(alpha, 4u));
}

double ode_residual(const RadialProfile& profile, double r) {
  return ode_residual(profile.n(), profile.alpha(), profile.u(r), r);
}

RationalFunction ode_residual_exact(int n, const Rational& alpha, const RationalFunction& u) {
  return ode_residual_formula(u, u.derivative(), RationalFunction::variable(), n,
                              RationalFunction(pow(alpha, 4u)));
}

double printed_residual(int n, double alpha, const NumDual& u, double r) {
  const double a4 = std::pow(alpha, 4u);
  const double r4 = std::pow(r, 4);
  const double w = std::sqrt(u.value);
  const double dw = u.d1 / (2.0 * w);
  return dw * (r4 * r - r * a4) + 4.0 * u.value * a4 + 4.0 * (n + 1) * (r4 - a4 - r4 * u.value);
}

// ---- reference metrics ------------------------------------------------------

EtaCoefficients to_eta_coefficients(const AnsatzCoefficients<RationalFunction>& c) {
  return {c.grr, RationalFunction(4) * c.f_lambda2, c.c2, RationalFunction(2) * c.b2,
          RationalFunction(2) * c.a2};
}

EtaCoefficients eight_dimensional_family(const Rational& alpha) {
  const RationalFunction r = RationalFunction::variable();
  const RationalFunction a2(Rational(alpha * alpha));
  const RationalFunction a4(pow(alpha, 4u));
  const RationalFunction r2 = r * r;
  const RationalFunction r4 = r2 * r2;
  const RationalFunction D = r4 * r4 - RationalFunction(2) * a4 * (r4 - RationalFunction(1)) - RationalFunction(1);
  const RationalFunction m = (r2 - a2) * (r2 + a2);
  return {r4 * m / D, D / (r2 * m), r2, r2 + a2, r2 - a2};
}

AnsatzCoefficients<RationalFunction> hyperkahler_metric() {
  const RationalFunction r = RationalFunction::variable();
  const RationalFunction one(1);
  const RationalFunction s = one - pow(r, -4);
  return {one / s, s * r * r / RationalFunction(4), r * r, (r * r - one) / RationalFunction(2),
          (r * r + one) / RationalFunction(2)};
}

CalabiCoefficients calabi_metric(int m) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  const RationalFunction rho = RationalFunction::variable();
  const RationalFunction s = RationalFunction(1) - pow(RationalFunction(1) / rho, 2 * m + 2);
  return {RationalFunction(1) / s, s * rho * rho};
}

// ---- ODE --------------------------------------------------------------------

double fit_constant(int n, double alpha, double r, double u) {
  const double p = std::pow(r, 4) - std::pow(alpha, 4u);
  return u * std::pow(r, 4) * std::pow(p, n) - std::pow(p, n + 1);
}

OdeResult integrate_ode(int n, double alpha, double r0, double u0, double r1, double tol) {
  validate_family_parameters(n, alpha);
  if (!(r1 > r0)) throw std::invalid_argument("integrate_ode needs r1 > r0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double a4 = std::pow(alpha, 4u);
  if (!(std::pow(r0, 4) > a4)) throw std::invalid_argument("r0 must satisfy r0^4 > alpha^4");

  using State = std::array<double, 1>;
  namespace odeint = boost::numeric::odeint;
  const double step_tol = std::max(tol * 1e-2, 1e-15);
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(step_tol, step_tol);
  auto rhs = [n, a4](const State& x, State& dxdr, double r) {
    const double r4 = r * r * r * r;
    dxdr[0] = (4.0 * x[0] * a4 + 4.0 * (n + 1) * (r4 - a4 - r4 * x[0])) / (r4 * r - r * a4);
  };

  OdeResult result;
  result.fitted_constant = fit_constant(n, alpha, r0, u0);
  State x{u0};
  double r = r0;
  double h = std::min(1e-4, (r1 - r0) / 16.0);
  result.samples.push_back({r, u0});
  constexpr int kMaxSteps = 1'000'000;
  while (r < r1) {
    if (r + h > r1) h = r1 - r;
    const double r_before = r;
    if (stepper.try_step(rhs, x, r, h) == odeint::success) {
      ++result.steps;
      if (!std::isfinite(x[0])) throw OdeError("non-finite state at r = " + format_double(r));
      result.samples.push_back({r, x[0]});
      if (r1 - r < 1e-14 * std::max(1.0, std::abs(r1))) r = r1;
    } else {
      ++result.rejected;
      if (h < 1e-13 * std::max(1.0, std::abs(r_before))) {
        std::ostringstream os;
        os << "step-size underflow at r = " << format_double(r_before) << " (h = " << h
           << ", r^5 - r alpha^4 = " << r_before * (std::pow(r_before, 4) - a4) << ")";
        throw OdeError(os.str());
      }
    }
    if (result.steps + result.rejected > kMaxSteps) throw OdeError("step budget exhausted");
  }
  result.u_end = x[0];
  result.u_closed_end = profile_W(n, alpha, result.fitted_constant).u(r1).value;
  result.relative_error =
      std::abs(result.u_end - result.u_closed_end) / (1.0 + std::abs(result.u_closed_end));
  return result;
}

// ---- boundary slope -----------------------------------------------------------

BoundarySlope boundary_slope(int n, double alpha) {
  validate_family_parameters(n, alpha);
  const RadialProfile profile = canonical_profile(n, alpha);
  // d/dt (r sqrt(u)) = sqrt(u) d/dr (r sqrt(u)) = u + r u'/2.
  auto slope_at = [&](double r) {
    const NumDual u = profile.u(r);
    return u.value + 0.5 * r * u.d1;
  };

  // Neville extrapolation to h = 0 of s(1 + h), h = h0 / 2^k.
  constexpr int kLevels = 8;
  constexpr double kH0 = 0.02;
  std::array<std::array<double, kLevels>, kLevels> table{};
  std::array<double, kLevels> h{};
  for (int k = 0; k < kLevels; ++k) {
    h[k] = kH0 / std::pow(2.0, k);
    table[k][0] = slope_at(1.0 + h[k]);
    for (int j = 1; j <= k; ++j) {
      table[k][j] = table[k][j - 1] +
                    (table[k][j - 1] - table[k - 1][j - 1]) * h[k] / (h[k - j] - h[k]);
    }
  }
  BoundarySlope out;
  out.slope = table[kLevels - 1][kLevels - 1];
  out.error_estimate = std::abs(out.slope - table[kLevels - 2][kLevels - 2]);
  out.hyperkahler_bolt = alpha == 1.0;
  if (out.hyperkahler_bolt) {
    // u = 1 - r^-4 once the common factor (r^4 - 1)^n cancels.
    const NumDual r = NumDual::variable(1.0);
    const NumDual u = NumDual(1.0) - pow(r, -4);
    out.analytic = u.value + 0.5 * u.d1;
  } else {
    out.analytic = slope_at(1.0);
  }
  return out;
}

// ---- profile files ------------------------------------------------------------

namespace {

// Value and first two derivatives at x of the polynomial through the points.
NumDual local_fit(const std::vector<std::pair<double, double>>& pts, double x) {
  const int m = static_cast<int>(pts.size());
  Eigen::MatrixXd V(m, m);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const double t = pts[i].first - x;
    double p = 1.0;
    for (int j = 0; j < m; ++j, p *= t) V(i, j) = p;
    y(i) = pts[i].second;
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  return {c(0), m > 1 ? c(1) : 0.0, m > 2 ? 2.0 * c(2) : 0.0};
}

}  // namespace

NumDual SampledProfile::at(double r) const {
  if (samples.empty()) throw std::domain_error("profile has no samples");
  for (const auto& s : samples) {
    if (std::abs(s.r - r) <= 1e-12 * std::max(1.0, std::abs(r)) && s.du && s.d2u) {
      return {s.u, *s.du, *s.d2u};
    }
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) pts.emplace_back(s.r, s.u);
  std::sort(pts.begin(), pts.end(), [r](const auto& a, const auto& b) {
    return std::abs(a.first - r) < std::abs(b.first - r);
  });
  pts.resize(std::min<std::size_t>(pts.size(), 5));
  if (std::abs(pts.front().first - r) > 1e-12 * std::max(1.0, std::abs(r)) &&
      (r < std::min_element(samples.begin(), samples.end(), [](auto& a, auto& b) { return a.r < b.r; })->r ||
       r > std::max_element(samples.begin(), samples.end(), [](auto& a, auto& b) { return a.r < b.r; })->r)) {
    throw std::domain_error("r = " + format_double(r) + " outside the sampled range");
  }
  NumDual fit = local_fit(pts, r);
  for (const auto& s : samples) {
    if (std::abs(s.r - r) <= 1e-12 * std::max(1.0, std::abs(r))) {
      fit.value = s.u;
      if (s.du) fit.d1 = *s.du;
      if (s.d2u) fit.d2 = *s.d2u;
    }
  }
  return fit;
}

std::vector<double> SampledProfile::radii() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.r);
  return out;
}

SampledProfile profile_from_json(const nlohmann::json& j) {
  SampledProfile p;
  try {
    p.n = j.at("n").get<int>();
    p.alpha = j.at("alpha").get<double>();
    p.C = j.value("C", 0.0);
    p.label = j.value("label", std::string("profile"));
    for (const auto& s : j.at("samples")) {
      ProfileSample ps;
      ps.r = s.at("r").get<double>();
      ps.u = s.at("u").get<double>();
      if (s.contains("du")) ps.du = s.at("du").get<double>();
      if (s.contains("d2u")) ps.d2u = s.at("d2u").get<double>();
      p.samples.push_back(ps);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed profile: ") + e.what());
  }
  validate_family_parameters(p.n, p.alpha);
  if (p.samples.empty()) throw std::invalid_argument("profile has no samples");
  return p;
}

nlohmann::ordered_json profile_to_json(const SampledProfile& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["alpha"] = p.alpha;
  j["C"] = p.C;
  j["label"] = p.label;
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : p.samples) {
    nlohmann::ordered_json row{{"r", s.r}, {"u", s.u}};
    if (s.du) row["du"] = *s.du;
    if (s.d2u) row["d2u"] = *s.d2u;
    j["samples"].push_back(std::move(row));
  }
  return j;
}

SampledProfile sample_profile(int n, double alpha, double C, const std::function<NumDual(double)>& u,
                              std::span<const double> radii, std::string label) {
  SampledProfile p{n, alpha, C, std::move(label), {}};
  for (double r : radii) {
    const NumDual v = u(r);
    p.samples.push_back({r, v.value, v.d1, v.d2});
  }
  return p;
}

}  // namespace hlab
