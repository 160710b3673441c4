#include "hyharm/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyharm::radial {

namespace {

void check_dim(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(name) + " must be positive and finite");
}

}  // namespace

double ode_rhs(double t, double y, double dy, int n) {
  check_dim(n);
  double coth_term = 0.0;
  if (n != 2) {
    if (std::abs(t) < 1e-14)
      throw singularity_error("radial equation singular at t = 0 (the unit sphere)");
    coth_term = static_cast<double>(n - 2) * dy / std::tanh(t);
  }
  return 0.5 * static_cast<double>(n - 1) * std::sinh(2.0 * y) + coth_term;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0}};
constexpr double kB5[7] = {35.0 / 384.0,      0.0,  500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0,  11.0 / 84.0,  0.0};
constexpr double kB4[7] = {5179.0 / 57600.0,  0.0,  7571.0 / 16695.0, 393.0 / 640.0,
                           -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};

struct State {
  double y;
  double dy;
};

struct StepResult {
  State value;       // 5th-order solution
  State error;       // embedded error estimate
  State derivative;  // f at the new point (FSAL stage)
};

State eval_rhs(double t, const State& s, int n) { return {s.dy, ode_rhs(t, s.y, s.dy, n)}; }

StepResult rk_step(double t, const State& s, const State& f0, double h, int n) {
  State k[7];
  k[0] = f0;
  for (int stage = 1; stage < 7; ++stage) {
    State arg{s.y, s.dy};
    for (int j = 0; j < stage; ++j) {
      arg.y += h * kA[stage][j] * k[j].y;
      arg.dy += h * kA[stage][j] * k[j].dy;
    }
    k[stage] = eval_rhs(t + kC[stage] * h, arg, n);
  }
  StepResult out;
  out.value = s;
  out.error = {0.0, 0.0};
  for (int stage = 0; stage < 7; ++stage) {
    out.value.y += h * kB5[stage] * k[stage].y;
    out.value.dy += h * kB5[stage] * k[stage].dy;
    out.error.y += h * (kB5[stage] - kB4[stage]) * k[stage].y;
    out.error.dy += h * (kB5[stage] - kB4[stage]) * k[stage].dy;
  }
  out.derivative = k[6];  // c7 = 1 and row 7 of A equals b5: first-same-as-last
  return out;
}

}  // namespace

RadialProfile integrate_ivp(double t0, double y0, double dy0, double t1,
                            const IvpOptions& options, int n) {
  check_dim(n);
  if (!std::isfinite(t0) || !std::isfinite(t1) || !std::isfinite(y0) || !std::isfinite(dy0))
    throw std::domain_error("integrate_ivp: initial data must be finite");
  if (options.abs_tol <= 0.0 || options.rel_tol <= 0.0)
    throw std::invalid_argument("integrate_ivp: tolerances must be positive");

  RadialProfile profile;
  profile.n = n;
  State s{y0, dy0};
  State f = eval_rhs(t0, s, n);
  profile.t.push_back(t0);
  profile.y.push_back(s.y);
  profile.dy.push_back(s.dy);
  profile.ddy.push_back(f.dy);  // the derivative state holds (y', y'')

  if (t0 == t1) return profile;
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  double h;
  if (options.fixed_step) {
    check_positive(options.step, "fixed step");
    h = dir * std::min(options.step, span);
  } else {
    double h0 = (options.initial_step > 0.0) ? options.initial_step : std::min(1e-2, span / 10.0);
    if (options.max_step > 0.0) h0 = std::min(h0, options.max_step);
    h = dir * h0;
  }

  double t = t0;
  std::size_t steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > options.max_steps)
      throw std::runtime_error("integrate_ivp: step budget exhausted");

    bool final_step = false;
    if (std::abs(h) >= dir * (t1 - t)) {
      h = t1 - t;
      final_step = true;
    }

    const StepResult step = rk_step(t, s, f, h, n);

    double err_norm;
    if (options.fixed_step) {
      err_norm = 0.0;  // no rejection in fixed-step mode
    } else {
      const double sc_y =
          options.abs_tol + options.rel_tol * std::max(std::abs(s.y), std::abs(step.value.y));
      const double sc_dy =
          options.abs_tol + options.rel_tol * std::max(std::abs(s.dy), std::abs(step.value.dy));
      const double ey = step.error.y / sc_y;
      const double edy = step.error.dy / sc_dy;
      err_norm = std::sqrt(0.5 * (ey * ey + edy * edy));
      if (!std::isfinite(err_norm)) err_norm = std::numeric_limits<double>::infinity();
    }

    const bool accepted =
        err_norm <= 1.0 && std::isfinite(step.value.y) && std::isfinite(step.value.dy);
    if (options.fixed_step && !accepted)
      throw divergence_error("integrate_ivp: non-finite state in fixed-step mode near t = " +
                                 std::to_string(t),
                             t);
    if (accepted) {
      // Accept.
      const double t_new = final_step ? t1 : t + h;
      if (std::abs(step.value.y) > options.blowup_y)
        throw divergence_error(
            "radial trajectory blew up near t = " + std::to_string(t_new) +
                " (|y| > " + std::to_string(options.blowup_y) + ")",
            t);
      t = t_new;
      s = step.value;
      f = step.derivative;
      profile.t.push_back(t);
      profile.y.push_back(s.y);
      profile.dy.push_back(s.dy);
      profile.ddy.push_back(f.dy);
    }

    if (!options.fixed_step) {
      const double safety = 0.9;
      double factor = (err_norm > 0.0) ? safety * std::pow(err_norm, -0.2)
                                       : 5.0;
      factor = std::clamp(factor, 0.2, 5.0);
      h *= factor;
      if (options.max_step > 0.0 && std::abs(h) > options.max_step) h = dir * options.max_step;
      if (std::abs(h) < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
        throw divergence_error("integrate_ivp: step size underflow near t = " + std::to_string(t),
                               t);
    }
  }
  return profile;
}

namespace {

// Index of the segment [t_i, t_i+1] containing tq, for strictly monotone t.
std::size_t find_segment(const std::vector<double>& t, double tq) {
  const bool ascending = t.back() > t.front();
  const double lo = ascending ? t.front() : t.back();
  const double hi = ascending ? t.back() : t.front();
  constexpr double kEdgeSlack = 1e-3;
  if (tq < lo - kEdgeSlack || tq > hi + kEdgeSlack)
    throw std::domain_error("profile sampled at t = " + std::to_string(tq) +
                            " outside the stored range [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  std::size_t idx;
  if (ascending) {
    auto it = std::upper_bound(t.begin(), t.end(), tq);
    idx = static_cast<std::size_t>(std::distance(t.begin(), it));
  } else {
    auto it = std::upper_bound(t.begin(), t.end(), tq, std::greater<>());
    idx = static_cast<std::size_t>(std::distance(t.begin(), it));
  }
  if (idx == 0) return 0;
  if (idx >= t.size()) return t.size() - 2;
  return idx - 1;
}

struct Quintic {
  // Two-point Taylor interpolant on [0, 1] matching value and first two
  // derivatives at both ends (in the scaled variable).
  double a0, a1, a2, c0, c1, c2;

  double value(double s) const {
    return a0 + s * (a1 + s * (0.5 * a2 + s * (c0 + s * (c1 + s * c2))));
  }
  double deriv(double s) const {
    return a1 + s * (a2 + s * (3.0 * c0 + s * (4.0 * c1 + s * 5.0 * c2)));
  }
};

Quintic make_quintic(double h, double y0, double dy0, double ddy0, double y1, double dy1,
                     double ddy1) {
  Quintic q;
  q.a0 = y0;
  q.a1 = h * dy0;
  q.a2 = h * h * ddy0;
  const double b0 = y1;
  const double b1 = h * dy1;
  const double b2 = h * h * ddy1;
  const double big_a = b0 - q.a0 - q.a1 - 0.5 * q.a2;
  const double big_b = b1 - q.a1 - q.a2;
  const double big_c = b2 - q.a2;
  q.c0 = 10.0 * big_a - 4.0 * big_b + 0.5 * big_c;
  q.c1 = -15.0 * big_a + 7.0 * big_b - big_c;
  q.c2 = 6.0 * big_a - 3.0 * big_b + 0.5 * big_c;
  return q;
}

}  // namespace

double RadialProfile::sample_y(double tq) const {
  if (size() < 2) throw std::domain_error("profile has fewer than two nodes");
  const std::size_t i = find_segment(t, tq);
  const double h = t[i + 1] - t[i];
  const double s = (tq - t[i]) / h;
  return make_quintic(h, y[i], dy[i], ddy[i], y[i + 1], dy[i + 1], ddy[i + 1]).value(s);
}

double RadialProfile::sample_dy(double tq) const {
  if (size() < 2) throw std::domain_error("profile has fewer than two nodes");
  const std::size_t i = find_segment(t, tq);
  const double h = t[i + 1] - t[i];
  const double s = (tq - t[i]) / h;
  return make_quintic(h, y[i], dy[i], ddy[i], y[i + 1], dy[i + 1], ddy[i + 1]).deriv(s) / h;
}

bool RadialProfile::strictly_increasing() const {
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    if (!(y[i + 1] > y[i])) return false;
  return true;
}

ShootingResult solve_radial_bvp(double a_h, double b_h, double alpha_h, double beta_h,
                                const BvpOptions& options, int n) {
  check_dim(n);
  check_positive(a_h, "a_h");
  check_positive(b_h, "b_h");
  check_positive(alpha_h, "alpha_h");
  check_positive(beta_h, "beta_h");
  if (!(a_h < b_h)) throw std::domain_error("solve_radial_bvp requires a_h < b_h");
  check_positive(options.boundary_tol, "boundary tolerance");

  const double t0 = std::log(std::tanh(a_h / 2.0));
  const double t1 = std::log(std::tanh(b_h / 2.0));

  int iterations = 0;
  // Terminal value y(t1) for a given initial slope; +inf when the trajectory
  // blows up before reaching t1 (which counts as overshooting any target).
  auto shoot = [&](double slope, RadialProfile* out) -> double {
    ++iterations;
    RadialProfile p = integrate_ivp(t0, alpha_h, slope, t1, options.ivp, n);
    const double terminal = p.y.back();
    if (out) *out = std::move(p);
    return terminal;
  };

  auto make_result = [&](RadialProfile profile, double slope, double residual) {
    ShootingResult res;
    res.proper = profile.strictly_increasing();
    res.profile = std::move(profile);
    res.initial_slope = slope;
    res.residual = residual;
    res.converged = std::abs(residual) <= options.boundary_tol;
    res.iterations = iterations;
    return res;
  };

  // Monotonicity in the slope makes [0, s_hi] a valid bracket: the slope-0
  // trajectory is the pointwise-minimal one, so a target below its terminal
  // value is unreachable.  A blow-up at slope 0 means every slope blows up.
  RadialProfile minimal_profile;
  const double minimal_terminal = shoot(0.0, &minimal_profile);
  const double minimal_residual = minimal_terminal - beta_h;
  if (minimal_residual > options.boundary_tol)
    throw no_solution_error(
        "target outer radius " + std::to_string(beta_h) +
        " lies below the minimal achievable value " + std::to_string(minimal_terminal) +
        " for this annulus");
  if (std::abs(minimal_residual) <= options.boundary_tol)
    return make_result(std::move(minimal_profile), 0.0, minimal_residual);

  auto residual_at = [&](double slope, RadialProfile* out) -> double {
    try {
      return shoot(slope, out) - beta_h;
    } catch (const divergence_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  double s_lo = 0.0;
  double s_hi = std::max(options.slope_guess, 1e-3);
  RadialProfile trial;
  double r_hi = residual_at(s_hi, &trial);
  int doublings = 0;
  while (r_hi < 0.0) {
    s_lo = s_hi;
    s_hi *= 2.0;
    if (++doublings > 200)
      throw no_solution_error("shooting slope exceeded bracketing budget without overshoot");
    r_hi = residual_at(s_hi, &trial);
  }
  if (std::isfinite(r_hi) && std::abs(r_hi) <= options.boundary_tol)
    return make_result(std::move(trial), s_hi, r_hi);

  for (std::size_t iter = 0; iter < options.max_bisect; ++iter) {
    const double mid = 0.5 * (s_lo + s_hi);
    const double r_mid = residual_at(mid, &trial);
    if (std::isfinite(r_mid) && std::abs(r_mid) <= options.boundary_tol)
      return make_result(std::move(trial), mid, r_mid);
    if (r_mid < 0.0)
      s_lo = mid;
    else
      s_hi = mid;
    if (s_hi - s_lo <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s_hi)) break;
  }
  throw no_solution_error(
      "shooting bracket collapsed before meeting the boundary tolerance; the target outer "
      "radius is not attainable by a finite trajectory");
}

std::function<Eigen::VectorXd(const Eigen::VectorXd&)> euclidean_radial_map(double a, double alpha,
                                                                            int n) {
  check_dim(n);
  if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("a must lie in (0, 1)");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  const double an = std::pow(a, n);
  const double an1 = std::pow(a, n - 1);
  const double c1 = (1.0 - an1 * alpha) / (1.0 - an);
  const double c2 = an1 * (alpha - a) / (1.0 - an);
  return [c1, c2, n](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const double rho = x.norm();
    if (rho < 1e-300) throw std::domain_error("euclidean radial map undefined at the origin");
    return (c1 + c2 / std::pow(rho, n)) * x;
  };
}

double euclidean_nitsche_bound(double a, int n) {
  check_dim(n);
  if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("a must lie in (0, 1)");
  return 2.0 * a / (static_cast<double>(n - 1) + std::pow(a, n));
}

}  // namespace hyharm::radial
