#include "hyharm/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyharm::quadrature {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_order(int order) {
  if (order < 4 || order > 2048)
    throw std::invalid_argument("quadrature order must lie in [4, 2048]");
}

}  // namespace

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  if (n < 1 || n > 2048) throw std::invalid_argument("gauss_legendre: order out of range");
  std::vector<std::pair<double, double>> rule(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = -p1 / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return rule;
}

ParamSurface sphere_surface(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::domain_error("sphere radius must be positive and finite");
  return ellipsoid_surface(radius, radius, radius);
}

ParamSurface ellipsoid_surface(double ax, double ay, double az) {
  if (!(ax > 0.0) || !(ay > 0.0) || !(az > 0.0))
    throw std::domain_error("ellipsoid semi-axes must be positive");
  ParamSurface s;
  s.chart = [ax, ay, az](double th, double ph) {
    return Eigen::Vector3d(ax * std::sin(th) * std::cos(ph), ay * std::sin(th) * std::sin(ph),
                           az * std::cos(th));
  };
  s.chart_ds = [ax, ay, az](double th, double ph) {
    return Eigen::Vector3d(ax * std::cos(th) * std::cos(ph), ay * std::cos(th) * std::sin(ph),
                           -az * std::sin(th));
  };
  s.chart_dt = [ax, ay](double th, double ph) {
    return Eigen::Vector3d(-ax * std::sin(th) * std::sin(ph), ay * std::sin(th) * std::cos(ph),
                           0.0);
  };
  s.s0 = 0.0;
  s.s1 = kPi;
  s.t0 = 0.0;
  s.t1 = 2.0 * kPi;
  s.periodic_t = true;
  return s;
}

SphereConstant sphere_constant(int n) {
  if (n < 2) throw std::invalid_argument("sphere_constant: dimension must be >= 2");
  SphereConstant c;
  c.dim = n;
  c.measure = 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
  return c;
}

double surface_integral(const std::function<double(const Eigen::Vector3d&)>& f,
                        const ParamSurface& surface, int order) {
  check_order(order);
  if (!surface.chart) throw std::invalid_argument("surface has no chart");
  if (!(surface.s0 < surface.s1) || !(surface.t0 < surface.t1))
    throw std::invalid_argument("surface parameter rectangle is empty");

  const auto rule = gauss_legendre(order);
  const double s_mid = 0.5 * (surface.s0 + surface.s1);
  const double s_half = 0.5 * (surface.s1 - surface.s0);

  // Partials: analytic when given, otherwise central differences with a step
  // tied to the parameter span.
  const double hs = 1e-6 * (surface.s1 - surface.s0);
  const double ht = 1e-6 * (surface.t1 - surface.t0);
  auto d_s = [&](double sv, double tv) -> Eigen::Vector3d {
    if (surface.chart_ds) return surface.chart_ds(sv, tv);
    return (surface.chart(sv + hs, tv) - surface.chart(sv - hs, tv)) / (2.0 * hs);
  };
  auto d_t = [&](double sv, double tv) -> Eigen::Vector3d {
    if (surface.chart_dt) return surface.chart_dt(sv, tv);
    return (surface.chart(sv, tv + ht) - surface.chart(sv, tv - ht)) / (2.0 * ht);
  };

  struct TNode {
    double t, w;
  };
  std::vector<TNode> tnodes;
  if (surface.periodic_t) {
    const int m = 2 * order;
    const double step = (surface.t1 - surface.t0) / m;
    tnodes.reserve(m);
    for (int j = 0; j < m; ++j) tnodes.push_back({surface.t0 + j * step, step});
  } else {
    const double t_mid = 0.5 * (surface.t0 + surface.t1);
    const double t_half = 0.5 * (surface.t1 - surface.t0);
    tnodes.reserve(rule.size());
    for (const auto& [x, w] : rule) tnodes.push_back({t_mid + t_half * x, t_half * w});
  }

  double total = 0.0;
  for (const auto& [xs, ws] : rule) {
    const double sv = s_mid + s_half * xs;
    const double wsv = s_half * ws;
    for (const auto& node : tnodes) {
      const Eigen::Vector3d point = surface.chart(sv, node.t);
      const double element = d_s(sv, node.t).cross(d_t(sv, node.t)).norm();
      if (!std::isfinite(element) || element <= 0.0)
        throw std::domain_error("degenerate chart: vanishing area element at a quadrature node");
      const double value = f(point);
      if (!std::isfinite(value))
        throw std::domain_error("integrand not finite at a quadrature node");
      total += wsv * node.w * value * element;
    }
  }
  return total;
}

std::function<double(const Eigen::Vector3d&)> direction_energy_integrand(
    const tension::MapField& u, const tension::FdOptions& options) {
  const double exponent = 0.5 * (u.n - 1);
  return [u, options, exponent](const Eigen::Vector3d& x) {
    const double hs_sq = tension::direction_jacobian_hs_sq(u, x, options);
    return std::pow(hs_sq, exponent);
  };
}

namespace {

BoundCheck finish(double integral, double bound) {
  BoundCheck out;
  out.integral = integral;
  out.bound = bound;
  out.ratio = integral / bound;
  out.holds = integral >= bound * (1.0 - 1e-9);
  return out;
}

double sharp_constant(int n) {
  return std::pow(static_cast<double>(n - 1), 0.5 * (n - 1)) * sphere_constant(n).measure;
}

}  // namespace

BoundCheck check_surface_bound(const tension::MapField& u, const ParamSurface& surface, int order,
                               const tension::FdOptions& options) {
  const double integral = surface_integral(direction_energy_integrand(u, options), surface, order);
  return finish(integral, sharp_constant(u.n));
}

BoundCheck check_volume_bound(const tension::MapField& u, double a, double b, int order,
                              const tension::FdOptions& options) {
  if (!(a > 0.0) || !(a < b)) throw std::domain_error("shell radii must satisfy 0 < a < b");
  check_order(order);
  const auto rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto integrand = direction_energy_integrand(u, options);
  double total = 0.0;
  for (const auto& [x, w] : rule) {
    const double radius = mid + half * x;
    total += half * w * surface_integral(integrand, sphere_surface(radius), order);
  }
  return finish(total, sharp_constant(u.n) * (b - a));
}

}  // namespace hyharm::quadrature
