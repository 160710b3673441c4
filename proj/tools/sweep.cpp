#include "sweep.hpp"

#include <hyharm/bounds.hpp>
#include <hyharm/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyharm::cli {

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return out;
}

SweepGrid default_sweep_grid() {
  // Mostly convergent, with a few cells where even the zero-slope trajectory
  // blows up, so reports exercise the "divergent" status as well.
  return {linspace(0.2, 0.5, 5), linspace(0.6, 0.9, 5), linspace(0.2, 0.8, 3)};
}

SweepOutcome run_sweep(const SweepGrid& grid, const SweepOptions& options) {
  if (grid.a.empty() || grid.b.empty() || grid.alpha_h.empty()) {
    throw std::invalid_argument("sweep grid must not be empty");
  }
  SweepOutcome outcome;
  int index = 0;
  int converged = 0;
  int divergent = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_abs_residual = 0.0;
  for (double a : grid.a) {
    for (double b : grid.b) {
      for (double alpha_h : grid.alpha_h) {
        json row;
        row["index"] = index++;
        row["a"] = a;
        row["b"] = b;
        row["alpha_h"] = alpha_h;
        const double t0 = std::log(a);
        const double t1 = std::log(b);
        try {
          auto minimal = radial::integrate_ivp(t0, alpha_h, 0.0, t1, options.bvp.ivp);
          const double beta_h = minimal.y.back();
          auto shot = radial::solve_radial_bvp(2.0 * std::atanh(a), 2.0 * std::atanh(b),
                                               alpha_h, beta_h, options.bvp);
          auto report = bounds::check_product(a, b, alpha_h, beta_h);
          const double scale = std::max(std::abs(report.lhs), std::abs(report.rhs));
          const bool violated = report.margin < -options.margin_tol * std::max(scale, 1.0);
          row["status"] = "ok";
          row["beta_h"] = beta_h;
          row["slope"] = shot.initial_slope;
          row["residual"] = shot.residual;
          row["iterations"] = shot.iterations;
          row["converged"] = shot.converged;
          row["proper"] = shot.proper;
          row["bound_lhs"] = report.lhs;
          row["bound_rhs"] = report.rhs;
          row["margin"] = report.margin;
          row["violated"] = violated;
          if (shot.converged) ++converged;
          if (violated) ++outcome.violations;
          min_margin = std::min(min_margin, report.margin);
          max_abs_residual = std::max(max_abs_residual, std::abs(shot.residual));
        } catch (const divergence_error& e) {
          row["status"] = "divergent";
          row["last_valid_t"] = e.last_valid_t();
          ++divergent;
        }
        outcome.cases.push_back(std::move(row));
      }
    }
  }
  outcome.aggregate["cases"] = index;
  outcome.aggregate["converged"] = converged;
  outcome.aggregate["divergent"] = divergent;
  outcome.aggregate["violations"] = outcome.violations;
  outcome.aggregate["min_margin"] = min_margin;
  outcome.aggregate["max_abs_residual"] = max_abs_residual;
  return outcome;
}

}  // namespace hyharm::cli
