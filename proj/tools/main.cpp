#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hlab_cli/commands.hpp"

using namespace hlab::cli;

namespace {

struct Output {
  std::string format = "json";
  std::string path;
};

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", out.path, "write to this file instead of stdout");
}

int emit(const Report& report, const Output& out) {
  const Format format = parse_format(out.format);
  if (out.path.empty()) {
    report.write(std::cout, format);
  } else {
    std::ofstream f(out.path);
    if (!f) throw UsageError("cannot write " + out.path);
    report.write(f, format);
  }
  return report.exit_code();
}

int emit_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and holonomy checks for a cohomogeneity-one Ricci-flat family"};
  app.require_subcommand(1);

  RicciConfig ricci;
  KahlerConfig kahler;
  HolonomyConfig holo;
  OdeConfig ode;
  BoundaryConfig boundary;
  ExportConfig exp;
  int dump_n = 1;
  std::string grid;
  std::string points;
  std::string export_grid = "1.5,2,3";
  std::string kahler_grid = "1.5,2,3";
  double u0 = 0.0;
  Output o_ricci, o_kahler, o_holo, o_ode, o_boundary;
  std::string dump_out, export_out;

  auto* s_ricci = app.add_subcommand("verify-ricci", "max |Ric| and Ricci components on a radial grid");
  s_ricci->add_option("--n", ricci.n, "rank parameter, SU(n+2)");
  s_ricci->add_option("--alpha", ricci.alpha, "family parameter in [0, 1]");
  s_ricci->add_option("--r", grid, "radii: a,b,c or start:stop:count");
  s_ricci->add_option("--profile", ricci.profile_path, "profile JSON replacing the closed-form u");
  s_ricci->add_option("--ricci-tol", ricci.ricci_tol, "threshold on max|Ric| / (1 + max|Riem|)");
  s_ricci->add_option("--structure-tol", ricci.structure_tol, "relative threshold for the product checks");
  s_ricci->add_option("--random-profiles", ricci.random_profiles, "random non-solution profiles to test");
  s_ricci->add_option("--seed", ricci.seed, "seed for --random-profiles");
  add_output(s_ricci, o_ricci);

  auto* s_kahler = app.add_subcommand("verify-kahler", "closedness and nondegeneracy of Omega");
  s_kahler->add_option("--n", kahler.n, "rank parameter");
  s_kahler->add_option("--alpha", kahler.alpha, "p/q, integer or finite decimal");
  s_kahler->add_flag("--exact", kahler.exact, "exact rational arithmetic only");
  s_kahler->add_option("--variant", kahler.variant, "canonical, corrupt-sigma or swap-sigma")
      ->check(CLI::IsMember({"canonical", "corrupt-sigma", "swap-sigma"}));
  s_kahler->add_option("--r", kahler_grid, "radii for the nondegeneracy witness");
  add_output(s_kahler, o_kahler);

  auto* s_holo = app.add_subcommand("holonomy", "dimension of the curvature-generated holonomy algebra");
  s_holo->add_option("--n", holo.n, "rank parameter");
  s_holo->add_option("--alpha", holo.alpha, "family parameter in [0, 1]");
  s_holo->add_option("--points", points, "sample radii");
  s_holo->add_option("--rank-tol", holo.rank_tol, "relative singular value cutoff");
  add_output(s_holo, o_holo);

  auto* s_ode = app.add_subcommand("ode", "integrate the radial equation and compare to the closed form");
  s_ode->add_option("--n", ode.n, "rank parameter");
  s_ode->add_option("--alpha", ode.alpha, "family parameter in [0, 1]");
  s_ode->add_option("--r0", ode.r0, "start radius");
  s_ode->add_option("--r1", ode.r1, "end radius");
  auto* u0_opt = s_ode->add_option("--u0", u0, "initial u; refits the integration constant");
  s_ode->add_option("--tol", ode.tol, "integrator tolerance");
  s_ode->add_option("--threshold", ode.threshold, "pass threshold on the relative terminal error");
  add_output(s_ode, o_ode);

  auto* s_boundary = app.add_subcommand("boundary", "collapse slope at r = 1");
  s_boundary->add_option("--n", boundary.n, "rank parameter");
  s_boundary->add_option("--alpha", boundary.alpha, "family parameter in [0, 1]");
  s_boundary->add_option("--threshold", boundary.threshold, "absolute tolerance");
  add_output(s_boundary, o_boundary);

  auto* s_dump = app.add_subcommand("dump-algebra", "structure constants as JSON");
  s_dump->add_option("--n", dump_n, "rank parameter");
  s_dump->add_option("--out", dump_out, "output file");

  auto* s_export = app.add_subcommand("export-profile", "write a profile JSON for verify-ricci --profile");
  s_export->add_option("--n", exp.n, "rank parameter");
  s_export->add_option("--alpha", exp.alpha, "family parameter in [0, 1]");
  s_export->add_option("--kind", exp.kind, "closed or inverse-square")
      ->check(CLI::IsMember({"closed", "inverse-square"}));
  s_export->add_option("--r", export_grid, "sample radii");
  s_export->add_option("--out", export_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_ricci->parsed()) {
      ricci.radii = grid.empty() ? std::vector<double>{} : parse_grid(grid);
      return emit(cmd_verify_ricci(ricci), o_ricci);
    }
    if (s_kahler->parsed()) {
      kahler.radii = parse_grid(kahler_grid);
      return emit(cmd_verify_kahler(kahler), o_kahler);
    }
    if (s_holo->parsed()) {
      if (!points.empty()) holo.points = parse_grid(points);
      return emit(cmd_holonomy(holo), o_holo);
    }
    if (s_ode->parsed()) {
      if (u0_opt->count() > 0) ode.u0 = u0;
      return emit(cmd_ode(ode), o_ode);
    }
    if (s_boundary->parsed()) return emit(cmd_boundary(boundary), o_boundary);
    if (s_dump->parsed()) return emit_json(cmd_dump_algebra(dump_n), dump_out);
    if (s_export->parsed()) {
      exp.radii = parse_grid(export_grid);
      return emit_json(cmd_export_profile(exp), export_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
