#include "hlab_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hlab/curvature.hpp"
#include "hlab/holonomy.hpp"
#include "hlab/liealg.hpp"
#include "hlab_cli/pool.hpp"

namespace hlab::cli {

using nlohmann::ordered_json;

namespace {

void check_n(int n) {
  if (n < 1 || n > 6) throw UsageError("--n must be in 1..6");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
}

void check_radii(const std::vector<double>& radii, const char* flag) {
  if (radii.empty()) throw UsageError(std::string(flag) + " grid is empty");
  for (double r : radii) {
    if (!(r > 1.0) || !std::isfinite(r)) throw UsageError(std::string(flag) + " values must be > 1");
  }
}

void check_positive(double x, const char* flag) {
  if (!(x > 0.0)) throw UsageError(std::string(flag) + " must be positive");
}

Record failure(std::string check, ordered_json params, const std::exception& e) {
  Record rec;
  rec.check = std::move(check);
  rec.params = std::move(params);
  rec.value = nullptr;
  rec.pass = false;
  rec.details["diagnostic"] = e.what();
  return rec;
}

ordered_json components_json(const RicciComponents& c) {
  return {{"R0", c.r0}, {"Rf", c.rf}, {"Rc", c.rc}, {"Ra", c.ra}, {"Rb", c.rb}};
}

// ricci_flat, plus the product records when the point is not Ricci-flat.
std::vector<Record> ricci_point(const MetricAnsatz& metric, const StructureAlgebra& alg, double r,
                                ordered_json params, const RicciConfig& cfg, bool force_products) {
  std::vector<Record> out;
  params["r"] = r;
  RicciStructure s;
  try {
    s = ricci_structure(metric, alg, r);
  } catch (const std::exception& e) {
    out.push_back(failure("ricci_flat", params, e));
    return out;
  }
  Record flat;
  flat.check = "ricci_flat";
  flat.params = params;
  flat.value = s.max_ricci;
  flat.threshold = cfg.ricci_tol;
  flat.pass = s.max_ricci <= cfg.ricci_tol;
  flat.details["components"] = components_json(s.components);
  flat.details["max_riemann"] = s.max_riemann;
  flat.details["horizontality"] = s.horizontality;
  out.push_back(std::move(flat));
  if (!force_products && s.max_ricci <= cfg.ricci_tol) return out;

  Record prod;
  prod.check = "ricci_products";
  prod.params = params;
  prod.value = s.spread;
  prod.threshold = cfg.structure_tol;
  prod.pass = s.spread <= cfg.structure_tol;
  prod.details["products"] = {s.products.sigma, s.products.big_sigma, s.products.nu};
  prod.details["printed_sign_spread"] = s.printed_spread;
  out.push_back(std::move(prod));

  Record q;
  q.check = "ricci_products_vs_q_tilde";
  q.params = std::move(params);
  const double scale = std::max(std::abs(s.q_tilde), 1e-300);
  q.value = std::abs(s.common + s.q_tilde) / scale;
  q.threshold = cfg.structure_tol;
  q.pass = q.value.get<double>() <= cfg.structure_tol;
  q.details["common"] = s.common;
  q.details["q_tilde"] = s.q_tilde;
  q.details["printed_q"] = s.printed_q;
  q.details["common_over_q_tilde"] = s.common / s.q_tilde;
  q.details["common_over_printed_q"] = s.common / s.printed_q;
  out.push_back(std::move(q));
  return out;
}

std::vector<Record> flatten(std::vector<std::vector<Record>> groups) {
  std::vector<Record> out;
  for (auto& g : groups) {
    for (auto& r : g) out.push_back(std::move(r));
  }
  return out;
}

OmegaVariant parse_variant(const std::string& name) {
  if (name == "canonical") return OmegaVariant::Canonical;
  if (name == "corrupt-sigma") return OmegaVariant::CorruptSigma;
  if (name == "swap-sigma") return OmegaVariant::SwapSigma;
  throw UsageError("unknown --variant: " + name);
}

NumDual inverse_square(double r) {
  const double r2 = r * r;
  return {1.0 - 1.0 / r2, 2.0 / (r2 * r), -6.0 / (r2 * r2)};
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number in grid: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("bad number in grid: '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) ||
        c.find(':') != std::string::npos) {
      throw UsageError("grid must be start:stop:count");
    }
    const double start = number(a);
    const double stop = number(b);
    const double count = number(c);
    if (count < 1 || count != std::floor(count)) throw UsageError("grid count must be a positive integer");
    const int k = static_cast<int>(count);
    if (k == 1) {
      if (start != stop) throw UsageError("grid with count 1 needs start == stop");
      return {start};
    }
    for (int i = 0; i < k; ++i) out.push_back(start + (stop - start) * i / (k - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

NumDual InversePowerProfile::operator()(double r) const {
  NumDual x = NumDual::variable(r);
  NumDual inv2 = NumDual(1.0) / (x * x);
  NumDual term(1.0);
  NumDual sum(0.0);
  for (double c : coeffs) {
    sum = sum + NumDual(c) * term;
    term = term * inv2;
  }
  return sum;
}

InversePowerProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lead(0.6, 1.4);
  std::uniform_real_distribution<double> tail(-0.2, 0.2);
  InversePowerProfile p;
  p.coeffs.push_back(lead(rng));
  for (int k = 0; k < 3; ++k) p.coeffs.push_back(tail(rng));
  return p;
}

Report cmd_verify_ricci(const RicciConfig& cfg) {
  check_positive(cfg.ricci_tol, "--ricci-tol");
  check_positive(cfg.structure_tol, "--structure-tol");
  if (cfg.random_profiles < 0) throw UsageError("--random-profiles must be >= 0");
  Report report("verify-ricci", "numeric");

  if (cfg.profile_path) {
    std::ifstream in(*cfg.profile_path);
    if (!in) throw UsageError("cannot open profile file " + *cfg.profile_path);
    SampledProfile profile;
    try {
      profile = profile_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad profile file: ") + e.what());
    }
    check_n(profile.n);
    check_alpha(profile.alpha);
    std::vector<double> radii = cfg.radii;
    if (radii.empty()) {
      for (double r : profile.radii()) {
        if (r > 1.0) radii.push_back(r);
      }
    }
    check_radii(radii, "--r");
    const StructureAlgebra alg = build_algebra(profile.n);
    const MetricAnsatz metric = ansatz_with_profile(
        profile.n, profile.alpha, [&profile](double r) { return profile.at(r); }, profile.label);
    const ordered_json params = {{"n", profile.n}, {"alpha", profile.alpha}, {"profile", profile.label}};
    report.append(flatten(parallel_map<std::vector<Record>>(
        radii.size(), [&](std::size_t i) { return ricci_point(metric, alg, radii[i], params, cfg, false); })));
    return report;
  }

  check_n(cfg.n);
  check_alpha(cfg.alpha);
  const std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{1.5, 2.0, 3.0} : cfg.radii;
  check_radii(radii, "--r");
  const StructureAlgebra alg = build_algebra(cfg.n);

  if (cfg.random_profiles > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<InversePowerProfile> profiles;
    for (int k = 0; k < cfg.random_profiles; ++k) profiles.push_back(random_profile(rng));
    const std::size_t total = profiles.size() * radii.size();
    report.append(flatten(parallel_map<std::vector<Record>>(total, [&](std::size_t i) {
      const std::size_t k = i / radii.size();
      const MetricAnsatz metric = ansatz_with_profile(cfg.n, cfg.alpha, profiles[k], "random-" + std::to_string(k));
      ordered_json params = {{"n", cfg.n}, {"alpha", cfg.alpha}, {"profile", "random-" + std::to_string(k)},
                             {"seed", cfg.seed}};
      return ricci_point(metric, alg, radii[i % radii.size()], std::move(params), cfg, true);
    })));
    return report;
  }

  const MetricAnsatz metric = family_G(cfg.n, cfg.alpha);
  const ordered_json params = {{"n", cfg.n}, {"alpha", cfg.alpha}};
  report.append(flatten(parallel_map<std::vector<Record>>(
      radii.size(), [&](std::size_t i) { return ricci_point(metric, alg, radii[i], params, cfg, false); })));
  return report;
}

Report cmd_verify_kahler(const KahlerConfig& cfg) {
  check_n(cfg.n);
  check_radii(cfg.radii, "--r");
  Rational alpha;
  try {
    alpha = parse_rational(cfg.alpha);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (alpha < 0 || alpha > 1) throw UsageError("--alpha must lie in [0, 1]");
  const OmegaVariant variant = parse_variant(cfg.variant);
  Report report("verify-kahler", cfg.exact ? "exact" : "numeric");
  const StructureAlgebra alg = build_algebra(cfg.n);
  const KahlerForm omega = build_omega(cfg.n, alpha, variant);
  const ordered_json params = {{"n", cfg.n}, {"alpha", to_string(alpha)}, {"variant", cfg.variant}};

  const ClosednessCheck closed = check_closed(omega, alg);
  Record rec;
  rec.check = "d_omega";
  rec.params = params;
  rec.metric = "terms";
  rec.value = closed.residual.terms().size();
  rec.threshold = 0;
  rec.pass = closed.closed;
  if (!closed.closed) {
    ordered_json listing = ordered_json::array();
    for (const auto& t : closed.residual.terms()) {
      listing.push_back(FormExpr<Poly>::from_terms(3, {t}).render([&](int i) { return alg.name(i); }));
    }
    rec.details["residual_terms"] = std::move(listing);
  }
  report.add(std::move(rec));

  Record top;
  top.check = "omega_nondegenerate";
  top.params = params;
  top.metric = "value";
  top.value = ordered_json::array();
  int sign = 0;
  bool consistent = true;
  for (double r : cfg.radii) {
    const Rational c = top_power_coefficient(omega, alg, Rational(r));
    top.value.push_back(to_string(c));
    const int s = sgn(c);
    if (s == 0 || (sign != 0 && s != sign)) consistent = false;
    if (sign == 0) sign = s;
  }
  top.threshold = "nonzero, constant sign";
  top.pass = consistent;
  top.details["radii"] = cfg.radii;
  top.details["orientation_sign"] = sign;
  report.add(std::move(top));

  if (!cfg.exact) {
    const MetricAnsatz metric = family_G(cfg.n, to_double(alpha));
    for (double r : cfg.radii) {
      ordered_json p = params;
      p["r"] = r;
      try {
        const ComplexStructure j = complex_structure(omega, metric, alg, r);
        Record jr;
        jr.check = "complex_structure";
        jr.params = std::move(p);
        jr.value = std::max(j.square_residual, j.orthogonality_residual);
        jr.threshold = 1e-10;
        jr.pass = jr.value.get<double>() <= 1e-10;
        jr.details["scale"] = j.scale;
        report.add(std::move(jr));
      } catch (const std::exception& e) {
        report.add(failure("complex_structure", std::move(p), e));
      }
    }
  }
  return report;
}

Report cmd_holonomy(const HolonomyConfig& cfg) {
  check_n(cfg.n);
  check_alpha(cfg.alpha);
  check_radii(cfg.points, "--points");
  check_positive(cfg.rank_tol, "--rank-tol");
  Report report("holonomy", "numeric");
  const StructureAlgebra alg = build_algebra(cfg.n);
  const ordered_json params = {{"n", cfg.n}, {"alpha", cfg.alpha}, {"points", cfg.points}};
  HolonomyEstimate h;
  try {
    h = holonomy_dimension(family_G(cfg.n, cfg.alpha), alg, cfg.points, cfg.rank_tol);
  } catch (const std::exception& e) {
    report.add(failure("holonomy_dim", params, e));
    return report;
  }
  const bool bolt = cfg.alpha == 1.0;
  const int expected = bolt ? h.target_sp : h.target_su;

  Record dim;
  dim.check = "holonomy_dim";
  dim.params = params;
  dim.metric = "dim";
  dim.value = h.dim;
  dim.threshold = expected;
  dim.pass = h.dim == expected && !h.inconclusive;
  dim.details["expected_group"] = bolt ? "sp(" + std::to_string(cfg.n + 1) + ")"
                                       : "su(" + std::to_string(2 * cfg.n + 2) + ")";
  dim.details["target_su"] = h.target_su;
  dim.details["target_sp"] = h.target_sp;
  dim.details["so_dim"] = h.so_dim;
  dim.details["single_point_dim"] = h.single_point_dim;
  dim.details["spectral_gap"] = std::isinf(h.spectral_gap) ? ordered_json("inf") : ordered_json(h.spectral_gap);
  dim.details["rank_tol"] = h.rank_tol;
  dim.details["rounds"] = h.rounds;
  dim.details["stabilized"] = h.stabilized;
  dim.details["generators"] = h.generator_count;
  if (h.inconclusive) {
    std::ostringstream os;
    os << "inconclusive rank: spectral gap " << h.spectral_gap << " (need >= 1e3), stabilized "
       << (h.stabilized ? "yes" : "no");
    dim.details["diagnostic"] = os.str();
  } else if (h.dim != expected) {
    dim.details["diagnostic"] = "span dimension " + std::to_string(h.dim) + " differs from " +
                                std::to_string(expected);
  }
  report.add(std::move(dim));

  Record jc;
  jc.check = "j_commutation";
  jc.params = params;
  jc.value = h.max_commutator / h.curvature_scale;
  jc.threshold = 1e-9;
  jc.pass = jc.value.get<double>() <= 1e-9;
  jc.details["commuting_fraction"] = h.j_commuting_fraction;
  report.add(std::move(jc));

  Record tr;
  tr.check = "ricci_form_trace";
  tr.params = params;
  tr.value = h.max_ricci_form_trace / h.curvature_scale;
  tr.threshold = 1e-9;
  tr.pass = tr.value.get<double>() <= 1e-9;
  report.add(std::move(tr));
  return report;
}

Report cmd_ode(const OdeConfig& cfg) {
  check_n(cfg.n);
  check_alpha(cfg.alpha);
  check_positive(cfg.tol, "--tol");
  if (!(cfg.r0 > 1.0) || !(cfg.r1 > 1.0)) throw UsageError("--r0 and --r1 must be > 1");
  Report report("ode", "numeric");
  ordered_json params = {{"n", cfg.n}, {"alpha", cfg.alpha}, {"r0", cfg.r0}, {"r1", cfg.r1}, {"tol", cfg.tol}};
  if (cfg.u0) params["u0"] = *cfg.u0;
  try {
    const double u0 = cfg.u0 ? *cfg.u0 : canonical_profile(cfg.n, cfg.alpha).u(cfg.r0).value;
    const OdeResult res = integrate_ode(cfg.n, cfg.alpha, cfg.r0, u0, cfg.r1, cfg.tol);
    Record rec;
    rec.check = "ode_closed_form";
    rec.params = std::move(params);
    rec.metric = "relative_error";
    rec.value = res.relative_error;
    rec.threshold = cfg.threshold;
    rec.pass = res.relative_error <= cfg.threshold;
    rec.details["u_end"] = res.u_end;
    rec.details["u_closed_end"] = res.u_closed_end;
    rec.details["fitted_constant"] = res.fitted_constant;
    rec.details["canonical_constant"] = canonical_constant(cfg.n, cfg.alpha);
    rec.details["steps"] = res.steps;
    rec.details["rejected"] = res.rejected;
    report.add(std::move(rec));
  } catch (const std::exception& e) {
    report.add(failure("ode_closed_form", std::move(params), e));
  }
  return report;
}

Report cmd_boundary(const BoundaryConfig& cfg) {
  check_n(cfg.n);
  check_alpha(cfg.alpha);
  check_positive(cfg.threshold, "--threshold");
  Report report("boundary", "numeric");
  const ordered_json params = {{"n", cfg.n}, {"alpha", cfg.alpha}};
  try {
    const BoundarySlope b = boundary_slope(cfg.n, cfg.alpha);
    const double expected = b.hyperkahler_bolt ? 2.0 : 2.0 * (cfg.n + 1);
    Record rec;
    rec.check = "boundary_slope";
    rec.params = params;
    rec.metric = "slope";
    rec.value = b.slope;
    rec.threshold = cfg.threshold;
    rec.pass = std::abs(b.slope - expected) <= cfg.threshold;
    rec.details["expected"] = expected;
    rec.details["analytic"] = b.analytic;
    rec.details["error_estimate"] = b.error_estimate;
    rec.details["flag"] = b.hyperkahler_bolt ? "hyperkahler bolt" : "";
    report.add(std::move(rec));
  } catch (const std::exception& e) {
    report.add(failure("boundary_slope", params, e));
  }
  return report;
}

ordered_json cmd_dump_algebra(int n) {
  check_n(n);
  return dump_algebra(build_algebra(n));
}

ordered_json cmd_export_profile(const ExportConfig& cfg) {
  check_n(cfg.n);
  check_alpha(cfg.alpha);
  check_radii(cfg.radii, "--r");
  if (cfg.kind == "closed") {
    const RadialProfile p = canonical_profile(cfg.n, cfg.alpha);
    return profile_to_json(sample_profile(cfg.n, cfg.alpha, p.constant(), [&p](double r) { return p.u(r); },
                                          cfg.radii, "closed-form"));
  }
  if (cfg.kind == "inverse-square") {
    return profile_to_json(sample_profile(cfg.n, cfg.alpha, 0.0, inverse_square, cfg.radii, "1-r^-2"));
  }
  throw UsageError("unknown --kind: " + cfg.kind);
}

}  // namespace hlab::cli
