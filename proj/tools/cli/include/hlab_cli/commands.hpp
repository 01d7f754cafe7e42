#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlab/metrics.hpp"
#include "hlab_cli/report.hpp"

namespace hlab::cli {

// Bad flags or values; the front-end maps this to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "1.5,2,3" or "start:stop:count" (inclusive, count >= 2 unless start == stop).
std::vector<double> parse_grid(const std::string& text);

struct RicciConfig {
  int n = 1;
  double alpha = 0.0;
  std::vector<double> radii{1.5, 2.0, 3.0};
  std::optional<std::string> profile_path;
  double ricci_tol = 1e-9;
  double structure_tol = 1e-9;
  int random_profiles = 0;
  std::uint64_t seed = 1;
};

struct KahlerConfig {
  int n = 1;
  std::string alpha = "0";
  bool exact = false;
  std::string variant = "canonical";  // canonical | corrupt-sigma | swap-sigma
  std::vector<double> radii{1.5, 2.0, 3.0};
};

struct HolonomyConfig {
  int n = 1;
  double alpha = 0.5;
  std::vector<double> points{1.3, 2.1, 3.7};
  double rank_tol = 1e-8;
};

struct OdeConfig {
  int n = 1;
  double alpha = 0.5;
  double r0 = 1.001;
  double r1 = 4.0;
  std::optional<double> u0;
  double tol = 1e-10;
  double threshold = 1e-8;
};

struct BoundaryConfig {
  int n = 1;
  double alpha = 0.5;
  double threshold = 1e-6;
};

struct ExportConfig {
  int n = 1;
  double alpha = 0.5;
  std::string kind = "closed";  // closed | inverse-square
  std::vector<double> radii{1.5, 2.0, 3.0};
};

Report cmd_verify_ricci(const RicciConfig& cfg);
Report cmd_verify_kahler(const KahlerConfig& cfg);
Report cmd_holonomy(const HolonomyConfig& cfg);
Report cmd_ode(const OdeConfig& cfg);
Report cmd_boundary(const BoundaryConfig& cfg);

nlohmann::ordered_json cmd_dump_algebra(int n);
nlohmann::ordered_json cmd_export_profile(const ExportConfig& cfg);

// u(r) = sum_k c_k r^(-2k): a smooth positive profile that does not solve
// the radial equation, for negative controls.
struct InversePowerProfile {
  std::vector<double> coeffs;
  NumDual operator()(double r) const;
};

// c_0 in [0.6, 1.4], c_1..c_3 in [-0.3, 0.3]; positive on r >= 1.1.
InversePowerProfile random_profile(std::mt19937_64& rng);

}  // namespace hlab::cli
