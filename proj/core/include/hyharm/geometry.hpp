#pragma once

#include <Eigen/Dense>

#include "hyharm/errors.hpp"

namespace hyharm::geometry {

// Points whose Euclidean norm exceeds 1 - kBoundaryMargin are rejected: the
// hyperbolic metric and the Moebius denominators degenerate at the boundary
// sphere faster than double precision can follow.
inline constexpr double kBoundaryMargin = 1e-12;

// A point of the unit-ball model of hyperbolic space, any dimension >= 2.
class BallPoint {
 public:
  explicit BallPoint(Eigen::VectorXd coords);

  static BallPoint origin(int n);

  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  double radius() const noexcept { return radius_; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }

 private:
  Eigen::VectorXd coords_;
  double radius_;
};

// Geodesic polar coordinates about the origin: hyperbolic radius and unit
// direction.  Only defined away from the origin.
struct GeodesicPolar {
  double radius;             // hyperbolic distance to the origin, > 0
  Eigen::VectorXd direction; // unit vector
};

// The symmetric bracket [x, y] = sqrt(|x-y|^2 + (1-|x|^2)(1-|y|^2)), equal to
// sqrt(1 + |x|^2 |y|^2 - 2<x,y>).  The first form is used because it shows
// [x, y] >= |x - y| directly and never cancels.
double bracket(const BallPoint& x, const BallPoint& y);

// Distance in the curvature -1 metric 2|dx| / (1 - |x|^2):
// tanh(d/2) = |x - y| / [x, y].
double hyp_distance(const BallPoint& x, const BallPoint& y);

GeodesicPolar to_geodesic_polar(const BallPoint& x);
BallPoint from_geodesic_polar(const GeodesicPolar& polar);

// Hyperbolic isometry of the ball of the form x -> post * t_c(pre * x) where
// t_c is the standard involution-derived translation taking c to the origin
// and fixing the diameter through c, and pre/post are orthogonal.  The family
// is closed under inversion and under composition with rotations on either
// side, which is all the library needs.
class MobiusMap {
 public:
  // Identity map of the n-ball.
  explicit MobiusMap(int n);

  // Translation taking `center` to the origin (pre = post = identity).
  static MobiusMap to_origin(const BallPoint& center);

  // Compose with an orthogonal map on the output side: x -> q * this(x).
  MobiusMap rotated(const Eigen::MatrixXd& q) const;
  // Compose with an orthogonal map on the input side: x -> this(q * x).
  MobiusMap pre_rotated(const Eigen::MatrixXd& q) const;

  MobiusMap inverse() const;

  // Raw evaluation; the caller guarantees |x| < 1.  Useful when composing
  // with numerical differentiation stencils.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  BallPoint operator()(const BallPoint& x) const;

  int dim() const noexcept { return static_cast<int>(center_.size()); }
  const Eigen::VectorXd& center() const noexcept { return center_; }

 private:
  MobiusMap(Eigen::MatrixXd pre, Eigen::VectorXd center, Eigen::MatrixXd post);

  Eigen::MatrixXd pre_;
  Eigen::VectorXd center_;
  Eigen::MatrixXd post_;
};

// Convenience factory mirroring the common usage.
MobiusMap mobius_to_origin(const BallPoint& center);

// A round annulus centred at the origin described by both radius systems.
struct Annulus {
  double inner;    // Euclidean radius in (0, 1)
  double outer;
  double inner_h;  // hyperbolic radius, inner_h = 2 atanh(inner)
  double outer_h;
};

// The hyperbolic annulus {p < d_h(x, center) < q} becomes, after the Moebius
// translation sending `center` to the origin, the round annulus with
// Euclidean radii tanh(p/2) < |y| < tanh(q/2).
Annulus normalize_annulus(const BallPoint& center, double p, double q);

// Boundary data for the annulus mapping problem: a domain annulus and a
// target annulus, each carried in Euclidean and hyperbolic radii at once.
// Invariants: 0 < a < b < 1, 0 < alpha < beta < 1, and the hyperbolic radii
// are 2 atanh of the Euclidean ones.
class AnnulusPair {
 public:
  static AnnulusPair from_euclidean(double a, double b, double alpha, double beta);
  static AnnulusPair from_hyperbolic(double a_h, double b_h, double alpha_h, double beta_h);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double a_h() const noexcept { return a_h_; }
  double b_h() const noexcept { return b_h_; }
  double alpha_h() const noexcept { return alpha_h_; }
  double beta_h() const noexcept { return beta_h_; }

 private:
  AnnulusPair() = default;
  double a_, b_, alpha_, beta_;
  double a_h_, b_h_, alpha_h_, beta_h_;
};

}  // namespace hyharm::geometry
