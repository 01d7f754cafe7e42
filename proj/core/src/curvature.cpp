#include "hlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlab/exterior.hpp"

namespace hlab {

namespace {

using Form = FormExpr<NumDual>;

double max_abs_value(const Form& f) {
  double m = 0.0;
  for (const auto& t : f.terms()) m = std::max(m, std::abs(t.coeff.value));
  return m;
}

// Squared scale of each frame generator, by ansatz class.
NumDual squared_scale(const AnsatzPoint& p, GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Radial: return p.grr;
    case GeneratorKind::Lambda: return p.f_lambda2;
    case GeneratorKind::Nu1:
    case GeneratorKind::Nu2: return p.c2;
    case GeneratorKind::Sigma1:
    case GeneratorKind::Sigma2: return p.a2;
    case GeneratorKind::BigSigma1:
    case GeneratorKind::BigSigma2: return p.b2;
    case GeneratorKind::Vertical: break;
  }
  throw std::logic_error("vertical generators carry no frame scale");
}

std::vector<Form> coframe(const Frame& frame) {
  std::vector<Form> theta;
  theta.reserve(frame.scale.size());
  for (std::size_t a = 0; a < frame.scale.size(); ++a) {
    theta.push_back(Form::generator(static_cast<int>(a), frame.scale[a]));
  }
  return theta;
}

}  // namespace

Frame make_frame(const MetricAnsatz& metric, const StructureAlgebra& alg, double r) {
  if (metric.n() != alg.n()) throw std::invalid_argument("metric and algebra disagree on n");
  const AnsatzPoint p = metric.at(r);
  Frame frame{r, {}};
  frame.scale.reserve(alg.frame_size());
  for (int a = 0; a < alg.frame_size(); ++a) frame.scale.push_back(sqrt(squared_scale(p, alg.generator(a).kind)));
  return frame;
}

CurvatureData::CurvatureData(int dim) : dim_(dim) {
  omega_.assign(static_cast<std::size_t>(dim) * dim, Form(1));
  gamma_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

Eigen::MatrixXd CurvatureData::curvature_operator(int c, int d) const {
  Eigen::MatrixXd m(dim_, dim_);
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) m(a, b) = R(a, b, c, d);
  }
  return m;
}

CurvatureData connection(const Frame& frame, const StructureAlgebra& alg) {
  const int dim = alg.frame_size();
  const int nv = alg.vertical_count();
  if (static_cast<int>(frame.scale.size()) != dim) throw std::invalid_argument("frame size mismatch");
  for (int a = 0; a < dim; ++a) {
    if (!(frame.scale[a].value > 0.0)) throw std::domain_error("degenerate frame: zero scale");
  }
  const auto& F = frame.scale;

  // d theta^a = -1/2 C^a_bc theta^b ^ theta^c - K^a_vb e^v ^ theta^b.
  std::vector<NumDual> C(static_cast<std::size_t>(dim) * dim * dim);
  std::vector<NumDual> K(static_cast<std::size_t>(dim) * nv * dim);
  auto c_at = [&](int a, int b, int c) -> NumDual& { return C[(a * dim + b) * dim + c]; };
  auto k_at = [&](int a, int v, int b) -> NumDual& { return K[(a * nv + v) * dim + b]; };

  const auto theta = coframe(frame);
  for (int a = 0; a < dim; ++a) {
    const Form dtheta = d(theta[a], alg);
    for (const auto& t : dtheta.terms()) {
      const auto ij = mask_indices(t.mask);
      const int i = ij[0];
      const int j = ij[1];
      if (j < dim) {
        const NumDual c = t.coeff / (F[i] * F[j]);
        c_at(a, i, j) = -c;
        c_at(a, j, i) = c;
      } else if (i < dim) {
        k_at(a, j - dim, i) = t.coeff / F[i];
      } else {
        throw CurvatureError("d theta has a vertical ^ vertical component: algebra is not reductive");
      }
    }
  }

  // Ad-invariance of the metric makes the vertical part antisymmetric.
  double k_scale = 0.0;
  double k_defect = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int v = 0; v < nv; ++v) {
      for (int b = 0; b < dim; ++b) {
        k_scale = std::max(k_scale, std::abs(k_at(a, v, b).value));
        k_defect = std::max(k_defect, std::abs(k_at(a, v, b).value + k_at(b, v, a).value));
      }
    }
  }
  if (k_defect > 1e-12 * (1.0 + k_scale)) {
    throw CurvatureError("metric is not invariant under the isotropy algebra");
  }

  CurvatureData data(dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      std::vector<Form::Term> terms;
      for (int c = 0; c < dim; ++c) {
        // Gamma_abc = 1/2 (A_abc + A_bca - A_cab), A = -C.
        const NumDual g = NumDual(0.5) * (c_at(c, a, b) - c_at(a, b, c) - c_at(b, c, a));
        data.gamma_[(a * dim + b) * dim + c] = g.value;
        terms.push_back({generator_bit(c), g * F[c]});
      }
      for (int v = 0; v < nv; ++v) terms.push_back({generator_bit(dim + v), k_at(a, v, b)});
      data.omega_[a * dim + b] = Form::from_terms(1, std::move(terms));
    }
  }
  return data;
}

CurvatureData riemann(const Frame& frame, const StructureAlgebra& alg) {
  CurvatureData data = connection(frame, alg);
  const int dim = data.dim_;
  const auto& F = frame.scale;
  data.riemann_.assign(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0);
  auto r_at = [&](int a, int b, int c, int e) -> double& {
    return data.riemann_[((a * dim + b) * dim + c) * dim + e];
  };

  std::vector<double> vertical(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      Form curv = d(data.connection_form(a, b), alg);
      for (int c = 0; c < dim; ++c) {
        curv += wedge(data.connection_form(a, c), data.connection_form(c, b));
      }
      double vert = 0.0;
      for (const auto& t : curv.terms()) {
        const auto ij = mask_indices(t.mask);
        if (ij[1] >= dim) {
          vert = std::max(vert, std::abs(t.coeff.value));
          continue;
        }
        const double v = t.coeff.value / (F[ij[0]].value * F[ij[1]].value);
        r_at(a, b, ij[0], ij[1]) = v;
        r_at(a, b, ij[1], ij[0]) = -v;
        r_at(b, a, ij[0], ij[1]) = -v;
        r_at(b, a, ij[1], ij[0]) = v;
      }
      vertical[a * dim + b] = vert;
    }
  }

  data.max_riemann_ = 0.0;
  for (double v : data.riemann_) data.max_riemann_ = std::max(data.max_riemann_, std::abs(v));
  data.horizontality_ = *std::max_element(vertical.begin(), vertical.end());

  data.ricci_ = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    for (int e = 0; e < dim; ++e) {
      double s = 0.0;
      for (int a = 0; a < dim; ++a) s += r_at(a, b, a, e);
      data.ricci_(b, e) = s;
    }
  }
  data.scalar_ = data.ricci_.trace();
  return data;
}

double structure_equation_residual(const CurvatureData& data, const Frame& frame, const StructureAlgebra& alg) {
  const auto theta = coframe(frame);
  double worst = 0.0;
  for (int a = 0; a < data.dim(); ++a) {
    Form f = d(theta[a], alg);
    for (int b = 0; b < data.dim(); ++b) f += wedge(data.connection_form(a, b), theta[b]);
    worst = std::max(worst, max_abs_value(f));
  }
  return worst;
}

double connection_antisymmetry_residual(const CurvatureData& data) {
  double worst = 0.0;
  for (int a = 0; a < data.dim(); ++a) {
    for (int b = a; b < data.dim(); ++b) {
      worst = std::max(worst, max_abs_value(data.connection_form(a, b) + data.connection_form(b, a)));
    }
  }
  return worst;
}

double riemann_symmetry_residual(const CurvatureData& data) {
  const int n = data.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          const double x = data.R(a, b, c, e);
          worst = std::max({worst, std::abs(x + data.R(b, a, c, e)), std::abs(x + data.R(a, b, e, c)),
                            std::abs(x - data.R(c, e, a, b))});
        }
  return worst;
}

double bianchi_residual(const CurvatureData& data) {
  const int n = data.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          worst = std::max(worst, std::abs(data.R(a, b, c, e) + data.R(a, c, e, b) + data.R(a, e, b, c)));
        }
  return worst;
}

RicciComponents ricci_components(const CurvatureData& data, const StructureAlgebra& alg, const Frame& frame,
                                 double tol) {
  const int dim = data.dim();
  const auto& ric = data.ricci();
  auto class_of = [&](int a) {
    switch (alg.generator(a).kind) {
      case GeneratorKind::Radial: return 0;
      case GeneratorKind::Lambda: return 1;
      case GeneratorKind::Nu1:
      case GeneratorKind::Nu2: return 2;
      case GeneratorKind::Sigma1:
      case GeneratorKind::Sigma2: return 3;
      case GeneratorKind::BigSigma1:
      case GeneratorKind::BigSigma2: return 4;
      case GeneratorKind::Vertical: break;
    }
    throw std::logic_error("vertical index in frame");
  };

  RicciComponents out;
  std::array<double, 5> value{};
  std::array<double, 5> scale2{};
  std::array<bool, 5> seen{};
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (a != b) out.off_diagonal = std::max(out.off_diagonal, std::abs(ric(a, b)));
    }
    const int k = class_of(a);
    if (!seen[k]) {
      seen[k] = true;
      value[k] = ric(a, a);
      scale2[k] = frame.scale[a].value * frame.scale[a].value;
    } else {
      out.class_spread = std::max(out.class_spread, std::abs(ric(a, a) - value[k]));
    }
  }
  const double threshold = tol * (1.0 + data.max_riemann());
  if (out.off_diagonal > threshold || out.class_spread > threshold) {
    std::ostringstream os;
    os << "Ricci tensor does not have the ansatz structure: off-diagonal " << out.off_diagonal
       << ", within-class spread " << out.class_spread << " (threshold " << threshold << ")";
    throw CurvatureError(os.str());
  }
  out.r0 = value[0];
  out.rf = value[1];
  out.rc = value[2];
  out.ra = value[3];
  out.rb = value[4];
  out.rf_coframe = value[1] * scale2[1];
  out.rc_coframe = value[2] * scale2[2];
  out.ra_coframe = value[3] * scale2[3];
  out.rb_coframe = value[4] * scale2[4];
  return out;
}

RicciProducts ricci_products(const RicciComponents& c, double r, double alpha) {
  const double r2 = r * r;
  const double a2 = alpha * alpha;
  const double minus = r2 - a2;
  const double plus = r2 + a2;
  return {c.ra * minus * minus * plus, c.rb * plus * plus * minus, c.rc * r2 * minus * plus};
}

double pairwise_spread(double x, double y, double z) {
  auto rel = [](double p, double q) {
    const double m = std::max(std::abs(p), std::abs(q));
    return m == 0.0 ? 0.0 : std::abs(p - q) / m;
  };
  return std::max({rel(x, y), rel(y, z), rel(x, z)});
}

RicciStructure ricci_structure(const MetricAnsatz& metric, const StructureAlgebra& alg, double r, double tol) {
  const Frame frame = make_frame(metric, alg, r);
  const CurvatureData data = riemann(frame, alg);
  RicciStructure out;
  out.components = ricci_components(data, alg, frame, tol);
  out.products = ricci_products(out.components, r, metric.alpha());
  const NumDual u = NumDual(1.0) / metric.at(r).grr;
  out.q_tilde = ode_residual(metric.n(), metric.alpha(), u, r);
  out.printed_q = printed_residual(metric.n(), metric.alpha(), u, r);
  out.max_riemann = data.max_riemann();
  out.max_ricci = data.ricci().cwiseAbs().maxCoeff() / (1.0 + out.max_riemann);
  out.horizontality = data.horizontality_residual();
  const auto& p = out.products;
  out.spread = pairwise_spread(p.sigma, p.big_sigma, p.nu);
  out.printed_spread = pairwise_spread(p.sigma, -p.big_sigma, p.nu);
  out.common = (p.sigma + p.big_sigma + p.nu) / 3.0;
  return out;
}

std::vector<double> sectional_samples(const CurvatureData& data, std::span<const std::pair<int, int>> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= data.dim() || b >= data.dim()) throw std::out_of_range("frame index");
    out.push_back(data.R(a, b, a, b));
  }
  return out;
}

}  // namespace hlab
