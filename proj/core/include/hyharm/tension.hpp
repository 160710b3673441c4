#pragma once

#include <Eigen/Dense>

#include <functional>

#include "hyharm/errors.hpp"

namespace hyharm::tension {

using ScalarField = std::function<double(const Eigen::Vector3d&)>;
using VectorField = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;

// A map u between (annular subsets of) three-dimensional hyperbolic spaces in
// the ball model, given by its Euclidean coordinate expression.  The domain
// may extend outside the unit ball (the coordinate formulas stay valid there);
// the image must stay strictly inside it, which `radius` enforces.
struct MapField {
  VectorField eval;
  int n = 3;  // domain dimension
  int m = 3;  // target dimension

  // |u(x)|, guarded away from the singular radii 0 and 1 of the polar
  // factorization u = r Theta.
  double radius(const Eigen::Vector3d& x) const;
  // Unit direction Theta(x) = u(x)/|u(x)|.
  Eigen::Vector3d direction(const Eigen::Vector3d& x) const;
};

struct FdOptions {
  double step = 1e-4;       // central-difference step
  bool richardson = false;  // extrapolate h and h/2 results (4 v(h/2) - v(h))/3
};

// Central finite differences of Euclidean (flat) derivatives.
Eigen::Vector3d fd_gradient(const ScalarField& f, const Eigen::Vector3d& x, double h);
double fd_laplacian(const ScalarField& f, const Eigen::Vector3d& x, double h);
// J(i, j) = d u_i / d x_j.
Eigen::Matrix3d fd_jacobian(const VectorField& f, const Eigen::Vector3d& x, double h);

// Squared Hilbert-Schmidt norm of the flat Jacobian of the unit direction
// field Theta = u/|u|.  For Theta = x/|x| this equals 2/rho^2.
double direction_jacobian_hs_sq(const MapField& u, const Eigen::Vector3d& x,
                                const FdOptions& options = {});

// Radial component of the tension field of u in the polar factorization
// u = r Theta.  The `literal` variant replaces the radial derivative dr/drho
// by the constant 1 (a transcription that appears plausible on paper but is
// inconsistent; kept for side-by-side comparison, it is visibly wrong on the
// inversion map).
enum class Tau1Variant { proof, literal };

double tau1(const MapField& u, const Eigen::Vector3d& x, const FdOptions& options = {},
            Tau1Variant variant = Tau1Variant::proof);

// Angular components of the tension field in spherical target coordinates
// (colatitude, longitude); longitudes are unwrapped around the value at x, so
// the finite-difference stencil never crosses the branch cut.  Throws
// singularity_error within 1e-3 radians of a coordinate pole.
Eigen::Vector2d tau_angular(const MapField& u, const Eigen::Vector3d& x,
                            const FdOptions& options = {});

// Residual of the scalar equation satisfied by the hyperbolic image radius
// R = 2 atanh(|u|):
//   lap R + 2 (n-2) rho/(1-rho^2) dR/drho - sinh(2R)/2 |D Theta|^2,
// which vanishes for harmonic u.  All derivatives are flat.
double hyplap_residual(const MapField& u, const Eigen::Vector3d& x,
                       const FdOptions& options = {});

// Hyperbolic energy density (1-|x|^2)^2 / (1-|u|^2)^2 |Du|^2; equals the
// domain dimension for isometries, e.g. 3 for the identity map of the ball.
double energy_density(const MapField& u, const Eigen::Vector3d& x,
                      const FdOptions& options = {});

// Ready-made fields.
MapField identity_map();
// x -> x/|x|^2, defined for |x| > 1, image inside the unit ball.
MapField inversion_map();
// u(x) = (c0 + c1 |x|) e for a fixed unit vector e: a smooth non-harmonic
// control whose tension stays far from zero.
MapField constant_direction_map(double c0, double c1, const Eigen::Vector3d& e);
// Radial map r(rho) Theta with hyperbolic image radius y(log rho) read off a
// solved profile (see hyharm/radial.hpp).
struct RadialSampler {
  std::function<double(double)> y_of_t;  // hyperbolic image radius vs t = log rho
};
MapField radial_sampler_map(RadialSampler sampler);

}  // namespace hyharm::tension
