#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

#include "hyharm/errors.hpp"

namespace hyharm::radial {

// Second-order radial equation in logarithmic radius t = log(rho):
//   y'' + (2 - n) coth(t) y' = (n - 1) sinh(2 y) / 2,
// where y is the hyperbolic radius of the image and rho the Euclidean radius
// of the source point.  For n = 3 this reads y'' = coth(t) y' + sinh(2 y).
double ode_rhs(double t, double y, double dy, int n);

// Dense solution record on an accepted-step grid.  `ddy` carries the ODE
// right-hand side at the nodes so that sampling can use a quintic two-point
// Taylor interpolant; with only (y, dy) a cubic would leave an O(h^2) error
// in second derivatives, visible to downstream finite-difference residuals.
struct RadialProfile {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> dy;
  std::vector<double> ddy;
  int n = 3;

  std::size_t size() const noexcept { return t.size(); }
  double t_front() const { return t.front(); }
  double t_back() const { return t.back(); }

  // Interpolated value / derivative at tq.  Queries may overshoot the stored
  // range by up to 1e-3 (finite-difference stencils at the edge); anything
  // further out throws std::domain_error.
  double sample_y(double tq) const;
  double sample_dy(double tq) const;

  // True when y is strictly increasing across the grid, i.e. the profile
  // attains its boundary values only at the endpoints.
  bool strictly_increasing() const;
};

struct IvpOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 0.0;      // 0 = automatic
  double max_step = 0.0;          // 0 = no cap
  std::size_t max_steps = 1'000'000;
  double blowup_y = 350.0;        // |y| beyond this means sinh overflow is imminent
  bool fixed_step = false;        // integrate with a constant step (order studies)
  double step = 1e-3;             // step size used when fixed_step is set
};

// Integrates the radial equation from (t0, y0, dy0) to t1 with an embedded
// 5(4) Runge-Kutta pair and proportional step control.  Throws
// divergence_error when the solution blows up or the step underflows; the
// error carries the last accepted abscissa.
RadialProfile integrate_ivp(double t0, double y0, double dy0, double t1,
                            const IvpOptions& options = {}, int n = 3);

struct BvpOptions {
  double boundary_tol = 1e-10;  // |y(t1) - target| accepted as converged
  IvpOptions ivp{};
  std::size_t max_bisect = 200;
  double slope_guess = 1.0;     // initial upper bracket for the shooting slope
};

struct ShootingResult {
  RadialProfile profile;
  double initial_slope = 0.0;  // dy/dt at the inner edge
  double residual = 0.0;       // y(t1) - target at return
  bool converged = false;
  bool proper = false;         // strictly increasing profile
  int iterations = 0;          // number of initial value solves
};

// Solves the two-point problem y(log a) = alpha_h, y(log b) = beta_h with
// a = tanh(a_h/2), b = tanh(b_h/2), by shooting on the initial slope.
// The slope-0 trajectory already overshoots any admissible target, so the
// bracket is [0, s]; targets below the slope-0 terminal value are unreachable
// and raise no_solution_error.  Integration blow-up on the minimal trajectory
// raises divergence_error.
ShootingResult solve_radial_bvp(double a_h, double b_h, double alpha_h, double beta_h,
                                const BvpOptions& options = {}, int n = 3);

// The Euclidean-harmonic radial map of the annulus a < |x| < 1 onto
// alpha <= |f| <= 1:  f(x) = (c1 + c2 / |x|^n) x with the linear system
// |f| = alpha at |x| = a and |f| = 1 at |x| = 1 solved for c1, c2.
// alpha = a gives c1 = 1, c2 = 0, the identity.
std::function<Eigen::VectorXd(const Eigen::VectorXd&)> euclidean_radial_map(double a,
                                                                            double alpha,
                                                                            int n = 3);

// Critical inner image radius 2 a / (n - 1 + a^n): the radial map family
// above is a diffeomorphism exactly when alpha is at least this value.
double euclidean_nitsche_bound(double a, int n);

}  // namespace hyharm::radial
