#include "hyharm/tension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hyharm::tension {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kRadiusFloor = 1e-8;   // |u| below this counts as the singular radius 0
constexpr double kRadiusCeil = 1e-8;    // 1 - |u| below this counts as the singular radius 1
constexpr double kPoleMargin = 1e-3;    // radians of colatitude kept clear of the poles

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

void check_step(double h) {
  if (!(h > 0.0) || !(h < 1.0)) throw std::invalid_argument("finite-difference step must be in (0, 1)");
}

// Runs `f` at the configured step, optionally eliminating the leading O(h^2)
// error of the central differences by combining h and h/2 evaluations.
template <typename F>
auto with_extrapolation(const FdOptions& options, F&& f) {
  using Result = std::decay_t<decltype(f(options.step))>;
  check_step(options.step);
  if (!options.richardson) return Result(f(options.step));
  return Result(((4.0 * f(options.step / 2.0)) - f(options.step)) / 3.0);
}

double checked_domain_radius(const Eigen::Vector3d& x) {
  const double rho = x.norm();
  if (rho < kRadiusFloor)
    throw singularity_error("polar factorization undefined at the domain origin");
  return rho;
}

}  // namespace

double MapField::radius(const Eigen::Vector3d& x) const {
  const double r = eval(x).norm();
  if (r <= kRadiusFloor) throw singularity_error("map radius vanishes at the sample point");
  if (r >= 1.0 - kRadiusCeil) throw singularity_error("map radius reaches the unit sphere");
  return r;
}

Eigen::Vector3d MapField::direction(const Eigen::Vector3d& x) const {
  const Eigen::Vector3d u = eval(x);
  const double r = u.norm();
  if (r <= kRadiusFloor) throw singularity_error("map direction undefined where the map vanishes");
  return u / r;
}

Eigen::Vector3d fd_gradient(const ScalarField& f, const Eigen::Vector3d& x, double h) {
  check_step(h);
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

double fd_laplacian(const ScalarField& f, const Eigen::Vector3d& x, double h) {
  check_step(h);
  const double center = f(x);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    acc += f(xp) - 2.0 * center + f(xm);
  }
  return acc / (h * h);
}

Eigen::Matrix3d fd_jacobian(const VectorField& f, const Eigen::Vector3d& x, double h) {
  check_step(h);
  Eigen::Matrix3d j;
  for (int col = 0; col < 3; ++col) {
    Eigen::Vector3d xp = x, xm = x;
    xp[col] += h;
    xm[col] -= h;
    j.col(col) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

double direction_jacobian_hs_sq(const MapField& u, const Eigen::Vector3d& x,
                                const FdOptions& options) {
  // Only the direction factor matters here, so the image may lie outside the
  // unit ball; direction() still rejects a vanishing map.
  return with_extrapolation(options, [&](double h) {
    const Eigen::Matrix3d j =
        fd_jacobian([&u](const Eigen::Vector3d& z) { return u.direction(z); }, x, h);
    return j.squaredNorm();
  });
}

double tau1(const MapField& u, const Eigen::Vector3d& x, const FdOptions& options,
            Tau1Variant variant) {
  const double rho = checked_domain_radius(x);
  const double r0 = u.radius(x);
  const ScalarField r_field = [&u](const Eigen::Vector3d& z) { return u.eval(z).norm(); };
  const VectorField dir_field = [&u](const Eigen::Vector3d& z) { return u.direction(z); };
  const double w = (1.0 - rho) * (1.0 + rho);
  const double m = static_cast<double>(u.m);

  return with_extrapolation(options, [&](double h) {
    const double lap_r = fd_laplacian(r_field, x, h);
    const Eigen::Vector3d grad_r = fd_gradient(r_field, x, h);
    const double dr_drho = (variant == Tau1Variant::literal) ? 1.0 : grad_r.dot(x / rho);
    const double s = fd_jacobian(dir_field, x, h).squaredNorm();
    return 0.25 * w * w * lap_r +
           0.25 * (2.0 * (m - 2.0) * w * rho * dr_drho +
                   r0 * w * w * (2.0 * grad_r.squaredNorm() - (1.0 + r0 * r0) * s) /
                       ((1.0 - r0) * (1.0 + r0)));
  });
}

Eigen::Vector2d tau_angular(const MapField& u, const Eigen::Vector3d& x,
                            const FdOptions& options) {
  const double rho = checked_domain_radius(x);
  const double r0 = u.radius(x);
  const Eigen::Vector3d dir0 = u.direction(x);
  const double theta0 = std::acos(clamp_unit(dir0.z()));
  if (theta0 < kPoleMargin || theta0 > kPi - kPoleMargin)
    throw singularity_error("target direction within the pole margin of spherical coordinates");
  const double phi0 = std::atan2(dir0.y(), dir0.x());

  const ScalarField r_field = [&u](const Eigen::Vector3d& z) { return u.eval(z).norm(); };
  const ScalarField colat = [&u](const Eigen::Vector3d& z) {
    return std::acos(clamp_unit(u.direction(z).z()));
  };
  // Longitude continued around phi0 so stencils never straddle the branch cut.
  const ScalarField longi = [&u, phi0](const Eigen::Vector3d& z) {
    const Eigen::Vector3d d = u.direction(z);
    return phi0 + std::remainder(std::atan2(d.y(), d.x()) - phi0, 2.0 * kPi);
  };

  const double w = (1.0 - rho) * (1.0 + rho);
  const double m = static_cast<double>(u.m);
  const Eigen::Vector3d omega = x / rho;
  const double radius_weight = (1.0 + r0 * r0) / (r0 * (1.0 - r0) * (1.0 + r0));

  return with_extrapolation(options, [&](double h) -> Eigen::Vector2d {
    const Eigen::Vector3d grad_r = fd_gradient(r_field, x, h);
    const Eigen::Vector3d grad_th = fd_gradient(colat, x, h);
    const Eigen::Vector3d grad_ph = fd_gradient(longi, x, h);
    const double lap_th = fd_laplacian(colat, x, h);
    const double lap_ph = fd_laplacian(longi, x, h);

    // Christoffel symbols of the round sphere in (colatitude, longitude):
    // G^th_phph = -sin th cos th, G^ph_thph = cot th.
    const double curv_th = -std::sin(theta0) * std::cos(theta0) * grad_ph.squaredNorm();
    const double curv_ph = 2.0 * (std::cos(theta0) / std::sin(theta0)) * grad_th.dot(grad_ph);

    auto component = [&](double lap, double curv, const Eigen::Vector3d& grad) {
      return 0.5 * w * w * (lap + curv) +
             0.5 * w *
                 ((m - 2.0) * rho * grad.dot(omega) + radius_weight * w * grad_r.dot(grad));
    };
    return Eigen::Vector2d(component(lap_th, curv_th, grad_th),
                           component(lap_ph, curv_ph, grad_ph));
  });
}

double hyplap_residual(const MapField& u, const Eigen::Vector3d& x, const FdOptions& options) {
  const double rho = checked_domain_radius(x);
  const double r0 = u.radius(x);
  const double big_r0 = 2.0 * std::atanh(r0);
  const double w = (1.0 - rho) * (1.0 + rho);
  if (std::abs(w) < 1e-12)
    throw singularity_error("hyperbolic radial operator singular at the unit sphere");
  const ScalarField big_r = [&u](const Eigen::Vector3d& z) {
    return 2.0 * std::atanh(std::min(u.eval(z).norm(), 1.0 - 1e-16));
  };
  const VectorField dir_field = [&u](const Eigen::Vector3d& z) { return u.direction(z); };
  const double n = static_cast<double>(u.n);
  const Eigen::Vector3d omega = x / rho;

  return with_extrapolation(options, [&](double h) {
    const double lap = fd_laplacian(big_r, x, h);
    const Eigen::Vector3d grad = fd_gradient(big_r, x, h);
    const double s = fd_jacobian(dir_field, x, h).squaredNorm();
    return lap + 2.0 * (n - 2.0) * rho / w * grad.dot(omega) - 0.5 * std::sinh(2.0 * big_r0) * s;
  });
}

double energy_density(const MapField& u, const Eigen::Vector3d& x, const FdOptions& options) {
  const double rho = x.norm();
  const double r0 = u.radius(x);
  const double w = (1.0 - rho) * (1.0 + rho);
  const double wu = (1.0 - r0) * (1.0 + r0);
  return with_extrapolation(options, [&](double h) {
    const Eigen::Matrix3d j = fd_jacobian(u.eval, x, h);
    return w * w * j.squaredNorm() / (wu * wu);
  });
}

MapField identity_map() {
  MapField f;
  f.eval = [](const Eigen::Vector3d& x) { return x; };
  return f;
}

MapField inversion_map() {
  MapField f;
  f.eval = [](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    const double q = x.squaredNorm();
    if (q < 1e-300) throw singularity_error("inversion undefined at the origin");
    return x / q;
  };
  return f;
}

MapField constant_direction_map(double c0, double c1, const Eigen::Vector3d& e) {
  const double norm = e.norm();
  if (norm < 1e-12) throw std::invalid_argument("direction vector must be nonzero");
  const Eigen::Vector3d unit = e / norm;
  MapField f;
  f.eval = [c0, c1, unit](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    return (c0 + c1 * x.norm()) * unit;
  };
  return f;
}

MapField radial_sampler_map(RadialSampler sampler) {
  if (!sampler.y_of_t) throw std::invalid_argument("radial sampler needs a profile function");
  MapField f;
  f.eval = [s = std::move(sampler)](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    const double rho = x.norm();
    if (rho < 1e-300) throw singularity_error("radial map undefined at the origin");
    const double y = s.y_of_t(std::log(rho));
    return std::tanh(y / 2.0) * (x / rho);
  };
  return f;
}

}  // namespace hyharm::tension
