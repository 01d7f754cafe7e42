#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hlab_cli/commands.hpp"
#include "hlab_cli/pool.hpp"

using namespace hlab::cli;

namespace {

int run_cli(const std::string& args, std::string* out = nullptr) {
  const auto path = std::filesystem::temp_directory_path() / ("hlab_cli_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(HLAB_CLI_PATH) + " " + args + " > " + path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    *out = ss.str();
  }
  std::filesystem::remove(path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Grid, ListsAndRanges) {
  EXPECT_EQ(parse_grid("1.5,2,3"), (std::vector<double>{1.5, 2.0, 3.0}));
  EXPECT_EQ(parse_grid("2:4:3"), (std::vector<double>{2.0, 3.0, 4.0}));
  EXPECT_EQ(parse_grid("2:2:1"), (std::vector<double>{2.0}));
  EXPECT_THROW(parse_grid("2:3"), UsageError);
  EXPECT_THROW(parse_grid("1,x"), UsageError);
  EXPECT_THROW(parse_grid("2:3:0"), UsageError);
  EXPECT_THROW(parse_grid("2:3:1.5"), UsageError);
}

TEST(Pool, KeepsInputOrderAndRethrows) {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); }, 8);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(v[i], i * i);
  EXPECT_THROW(parallel_map<int>(
                   10, [](std::size_t i) -> int { if (i == 3) throw std::runtime_error("x"); return 0; }, 4),
               std::runtime_error);
}

TEST(Pool, ThreadCountFromEnvironment) {
  ::setenv("HOLONOMY_LAB_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::setenv("HOLONOMY_LAB_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("HOLONOMY_LAB_THREADS");
}

TEST(Report, SchemaAndSummary) {
  RicciConfig cfg;
  cfg.n = 2;
  cfg.alpha = 0.7;
  cfg.radii = {1.5, 2.0, 3.0};
  const Report r = cmd_verify_ricci(cfg);
  const auto j = r.to_json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "verify-ricci");
  EXPECT_EQ(j["toolchain"]["mode"], "numeric");
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["summary"]["passed"], 3);
  EXPECT_EQ(r.exit_code(), 0);
  const auto& rec = j["records"][0];
  std::vector<std::string> keys;
  for (auto it = rec.begin(); it != rec.end(); ++it) keys.push_back(it.key());
  ASSERT_GE(keys.size(), 5u);
  EXPECT_EQ(keys[0], "check");
  EXPECT_EQ(keys[1], "params");
  EXPECT_EQ(keys[2], "residual");
  EXPECT_EQ(keys[3], "threshold");
  EXPECT_EQ(keys[4], "pass");
  EXPECT_LE(rec["residual"].get<double>(), 1e-9);
}

TEST(Report, DeterministicAcrossRunsAndThreadCounts) {
  RicciConfig cfg;
  cfg.n = 1;
  cfg.alpha = 0.3;
  cfg.radii = parse_grid("1.1:4:8");
  ::setenv("HOLONOMY_LAB_THREADS", "1", 1);
  const std::string a = cmd_verify_ricci(cfg).to_json().dump();
  ::setenv("HOLONOMY_LAB_THREADS", "6", 1);
  const std::string b = cmd_verify_ricci(cfg).to_json().dump();
  ::unsetenv("HOLONOMY_LAB_THREADS");
  EXPECT_EQ(a, b);
}

TEST(Report, CsvAndText) {
  BoundaryConfig cfg;
  cfg.n = 1;
  cfg.alpha = 0.5;
  const Report r = cmd_boundary(cfg);
  std::ostringstream csv, text;
  r.write(csv, Format::Csv);
  r.write(text, Format::Text);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "check,params,metric,value,threshold,pass");
  EXPECT_NE(csv.str().find("boundary_slope,\"{\"\"n\"\":1,\"\"alpha\"\":0.5}\",slope,"), std::string::npos);
  EXPECT_EQ(text.str().rfind("PASS boundary_slope", 0), 0u);
}

TEST(Commands, VerifyRicciFamilyAndHyperkahlerMember) {
  RicciConfig cfg;
  cfg.n = 1;
  cfg.alpha = 1.0;
  cfg.radii = {2.0};
  EXPECT_EQ(cmd_verify_ricci(cfg).exit_code(), 0);
}

TEST(Commands, VerifyRicciRandomProfilesPassTheProductChecks) {
  RicciConfig cfg;
  cfg.n = 2;
  cfg.alpha = 0.4;
  cfg.radii = {1.6};
  cfg.random_profiles = 4;
  cfg.seed = 9;
  const Report r = cmd_verify_ricci(cfg);
  ASSERT_EQ(r.records().size(), 12u);
  for (const auto& rec : r.records()) {
    if (rec.check == "ricci_flat") EXPECT_FALSE(rec.pass);
    else EXPECT_TRUE(rec.pass) << rec.check;
  }
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Commands, VerifyKahler) {
  KahlerConfig cfg;
  cfg.n = 3;
  cfg.alpha = "1/3";
  cfg.exact = true;
  EXPECT_EQ(cmd_verify_kahler(cfg).exit_code(), 0);
  cfg.n = 1;
  cfg.alpha = "0";
  EXPECT_EQ(cmd_verify_kahler(cfg).exit_code(), 0);
  cfg.alpha = "1/2";
  cfg.variant = "corrupt-sigma";
  const Report bad = cmd_verify_kahler(cfg);
  EXPECT_EQ(bad.exit_code(), 1);
  EXPECT_FALSE(bad.records()[0].details["residual_terms"].empty());
  cfg.alpha = "x";
  EXPECT_THROW(cmd_verify_kahler(cfg), UsageError);
  cfg.alpha = "3/2";
  EXPECT_THROW(cmd_verify_kahler(cfg), UsageError);
}

TEST(Commands, HolonomyOdeBoundary) {
  HolonomyConfig h;
  h.n = 1;
  h.alpha = 1.0;
  h.points = {1.5, 2.5};
  const Report hr = cmd_holonomy(h);
  EXPECT_EQ(hr.records()[0].value, 10);
  EXPECT_EQ(hr.exit_code(), 0);

  OdeConfig o;
  o.n = 1;
  o.alpha = 0.5;
  o.r0 = 1.5;
  o.u0 = 0.9;
  const Report orr = cmd_ode(o);
  EXPECT_EQ(orr.exit_code(), 0);
  EXPECT_NE(orr.records()[0].details["fitted_constant"].get<double>(), hlab::canonical_constant(1, 0.5));

  BoundaryConfig b;
  b.n = 2;
  b.alpha = 1.0;
  const Report br = cmd_boundary(b);
  EXPECT_EQ(br.exit_code(), 0);
  EXPECT_EQ(br.records()[0].details["flag"], "hyperkahler bolt");
}

TEST(Commands, UsageErrors) {
  RicciConfig r;
  r.n = 0;
  EXPECT_THROW(cmd_verify_ricci(r), UsageError);
  r.n = 1;
  r.radii = {0.9};
  EXPECT_THROW(cmd_verify_ricci(r), UsageError);
  HolonomyConfig h;
  h.rank_tol = -1;
  EXPECT_THROW(cmd_holonomy(h), UsageError);
  OdeConfig o;
  o.r0 = 0.5;
  EXPECT_THROW(cmd_ode(o), UsageError);
}

TEST(Binary, ExitCodes) {
  std::string out;
  EXPECT_EQ(run_cli("verify-ricci --n 2 --alpha 0.7 --r 1.5,2,3", &out), 0);
  EXPECT_NE(out.find("\"schema\": 1"), std::string::npos);
  EXPECT_EQ(run_cli("holonomy --n 2 --alpha 1 --points 2,3 --format text", &out), 0);
  EXPECT_NE(out.find("dim=21"), std::string::npos);
  EXPECT_EQ(run_cli("verify-kahler --n 1 --alpha 1/2 --variant swap-sigma --exact"), 1);
  EXPECT_EQ(run_cli("verify-ricci --n 0"), 2);
  EXPECT_EQ(run_cli("verify-ricci --r 1,x"), 2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("boundary --n 3 --alpha 0 --format csv", &out), 0);
}

TEST(Binary, BadProfileFile) {
  const auto path = std::filesystem::temp_directory_path() / ("hlab_bad_" + std::to_string(::getpid()) + ".json");
  ASSERT_EQ(run_cli("export-profile --n 1 --alpha 0.5 --kind inverse-square --r 2,3 --out " + path.string()), 0);
  std::string out;
  EXPECT_EQ(run_cli("verify-ricci --profile " + path.string() + " --format json", &out), 1);
  const auto j = nlohmann::json::parse(out);
  int products = 0;
  for (const auto& rec : j["records"]) {
    if (rec["check"] == "ricci_flat") EXPECT_FALSE(rec["pass"].get<bool>());
    if (rec["check"] == "ricci_products") {
      EXPECT_TRUE(rec["pass"].get<bool>());
      ++products;
    }
  }
  EXPECT_EQ(products, 2);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli("verify-ricci --profile /nonexistent.json"), 2);
}
