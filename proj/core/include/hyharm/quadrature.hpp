#pragma once

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

#include "hyharm/tension.hpp"

namespace hyharm::quadrature {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
// by Newton iteration on the Legendre recurrence (exact for polynomials of
// degree 2n-1).
std::vector<std::pair<double, double>> gauss_legendre(int n);

// Surface patch given by a chart over a rectangle.  When the analytic
// partials are absent they are replaced by central differences; suppling
// them removes the dominant quadrature-independent error floor.
struct ParamSurface {
  std::function<Eigen::Vector3d(double, double)> chart;
  std::function<Eigen::Vector3d(double, double)> chart_ds;  // optional
  std::function<Eigen::Vector3d(double, double)> chart_dt;  // optional
  double s0 = 0.0, s1 = 1.0;
  double t0 = 0.0, t1 = 1.0;
  bool periodic_t = false;  // trapezoid rule in t (spectrally accurate there)
};

// Round sphere |x| = radius and axis-aligned ellipsoid, parametrized by
// (colatitude, longitude) with analytic partials and periodic longitude.
ParamSurface sphere_surface(double radius);
ParamSurface ellipsoid_surface(double ax, double ay, double az);

// Measure of the unit (n-1)-sphere in R^n: 2 pi^(n/2) / Gamma(n/2).
struct SphereConstant {
  int dim = 3;           // ambient dimension n
  double measure = 0.0;  // omega_{n-1}
};
SphereConstant sphere_constant(int n);

// integral over the patch of f against the induced area element
// |d_s chart x d_t chart| ds dt, using `order` Gauss-Legendre nodes in s and
// 2 * order equispaced nodes in t when periodic (Gauss-Legendre otherwise).
// order must be at least 4.  A vanishing or non-finite area element at a
// quadrature node raises std::domain_error (degenerate chart).
double surface_integral(const std::function<double(const Eigen::Vector3d&)>& f,
                        const ParamSurface& surface, int order);

// x -> |D Theta(x)|^(n-1) for the direction field Theta = u/|u| of a map;
// this is the integrand whose sphere integrals are bounded below.  The
// default step 1e-5 keeps the finite-difference error near 1e-10 relative.
std::function<double(const Eigen::Vector3d&)> direction_energy_integrand(
    const tension::MapField& u, const tension::FdOptions& options = {1e-5, false});

struct BoundCheck {
  double integral = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // integral / bound
  bool holds = false;  // integral >= bound up to a 1e-9 relative allowance
};

// Lower bound for closed-surface integrals of |D Theta|^(n-1):
//   integral >= (n-1)^((n-1)/2) * omega_{n-1}    (= 8 pi when n = 3),
// with equality when u is radial (Theta = x/|x|) and the surface is a
// concentric sphere.
BoundCheck check_surface_bound(const tension::MapField& u, const ParamSurface& surface,
                               int order, const tension::FdOptions& options = {1e-5, false});

// The same bound integrated over a spherical shell a < |x| < b via the
// coarea slicing into concentric spheres:
//   integral >= (n-1)^((n-1)/2) * omega_{n-1} * (b - a).
BoundCheck check_volume_bound(const tension::MapField& u, double a, double b, int order,
                              const tension::FdOptions& options = {1e-5, false});

}  // namespace hyharm::quadrature
