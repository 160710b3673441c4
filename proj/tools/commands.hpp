#pragma once

#include "maps.hpp"
#include "report.hpp"
#include "sweep.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyharm::cli {

// Options shared by every subcommand.
struct CommonOptions {
  std::string format = "json";  // json | csv
  std::string out;              // output path; empty = stdout
  std::uint64_t seed = 12345;
  std::string config;           // key=value file, merged before parsing
};

// Exit codes.  2 (usage / invalid input) is produced by throwing
// std::invalid_argument or by the argument parser itself; 3 and 4 come from
// no_solution_error / divergence_error thrown by the core library.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitDivergence = 4;
inline constexpr int kExitViolation = 5;

struct BoundOptions {
  CommonOptions common;
  std::string form = "all";  // grad | ratio | product | all
  double a = 0.0, b = 0.0;   // Euclidean domain radii (required)
  // Image radii: exactly one of the two systems must be given.
  double alpha = -1.0, beta = -1.0;      // Euclidean
  double alpha_h = -1.0, beta_h = -1.0;  // hyperbolic
};
int run_bound(const BoundOptions& options);

struct RadialOptions {
  CommonOptions common;
  double a = 0.0, b = 0.0;  // Euclidean domain radii (required)
  bool identity = false;    // image radii equal the domain radii
  double alpha = -1.0, beta = -1.0;
  double alpha_h = -1.0, beta_h = -1.0;
  double boundary_tol = 1e-10;
  double ivp_tol = 1e-10;
};
int run_radial(const RadialOptions& options);

struct SweepCliOptions {
  CommonOptions common;
  double a_min = 0.2, a_max = 0.5;
  int a_count = 5;
  double b_min = 0.6, b_max = 0.9;
  int b_count = 5;
  double alpha_h_min = 0.2, alpha_h_max = 0.8;
  int alpha_h_count = 3;
  double boundary_tol = 1e-10;
  double ivp_tol = 1e-10;
  double margin_tol = 1e-12;
};
int run_sweep_cli(const SweepCliOptions& options);

struct LemmaOptions {
  CommonOptions common;
  int trials = 100000;
  int dim = 3;
  double tol = 1e-12;     // relative allowance on equality gaps and residuals
  bool sabotage = false;  // hidden: shrink the bound by 10% (harness self-test)
};
int run_verify_lemma(const LemmaOptions& options);

struct PropOptions {
  CommonOptions common;
  std::string map = "identity";    // identity | inversion | moebius
  std::string surface = "sphere";  // sphere | ellipsoid
  double radius = 1.0;
  std::vector<double> semi_axes = {1.2, 1.0, 0.9};
  std::vector<double> center = {0.25, -0.1, 0.15};  // moebius translation center
  bool volume = false;  // shell integral instead of a single surface
  double r_in = 0.5, r_out = 1.0;
  int order = 24;
  double fd_step = 1e-5;
};
int run_verify_prop(const PropOptions& options);

struct TensionOptions {
  CommonOptions common;
  MapSpec map;
  int samples = 50;
  double fd_step = 1e-4;
  bool richardson = false;
  double tol = 1e-5;          // residual threshold; exceeding it exits 5
  double r_min = 0.0, r_max = 0.0;  // 0 = per-map default annulus
  double pole_margin = 0.3;   // colatitude kept away from the sampling poles
  std::string variant = "proof";  // proof | literal radial tension term
};
int run_tension(const TensionOptions& options);

// Entry point used by main(); exposed for the test harness.
int run_cli(int argc, char** argv);

// Reads a flat key=value file (blank lines and # comments ignored) and
// appends "--key=value" for every key not already present among the
// arguments, so command-line flags override the file.
std::vector<std::string> merge_config_args(const std::vector<std::string>& args);

}  // namespace hyharm::cli
