#pragma once

#include "report.hpp"

#include <hyharm/radial.hpp>

#include <vector>

namespace hyharm::cli {

// Cartesian parameter grid: Euclidean domain radii (a, b) and hyperbolic
// inner image radius alpha_h.
struct SweepGrid {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> alpha_h;
};

// 5 x 5 x 3 = 75 cases spanning thin to thick annuli.
SweepGrid default_sweep_grid();

std::vector<double> linspace(double lo, double hi, int count);

struct SweepOptions {
  radial::BvpOptions bvp{};
  // Relative slack on the bound margin below which a case counts as violated.
  double margin_tol = 1e-12;
};

struct SweepOutcome {
  std::vector<json> cases;
  json aggregate = json::object();
  int violations = 0;
};

// For every grid point: integrate the zero-slope trajectory, whose terminal
// value is the smallest hyperbolic outer radius any radial solution can
// reach; reconstruct that extremal solution by shooting; then check the
// product-form bound at the achieved (a, b, alpha_h, beta_h).  Blow-up of the
// zero-slope trajectory is recorded as status "divergent", not as a
// violation.
SweepOutcome run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

}  // namespace hyharm::cli
