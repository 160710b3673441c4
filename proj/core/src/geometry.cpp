#include "hyharm/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hyharm::geometry {

namespace {

double atanh_clamped(double t) {
  // t is a Euclidean radius in [0, 1); atanh is safe there.
  return std::atanh(t);
}

void check_unit_radius(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0))
    throw std::domain_error(std::string(name) + " must lie in (0, 1), got " +
                            std::to_string(value));
}

void check_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::domain_error(std::string(name) + " must be positive and finite, got " +
                            std::to_string(value));
}

}  // namespace

BallPoint::BallPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("BallPoint needs dimension >= 2, got " +
                                std::to_string(coords_.size()));
  if (!coords_.allFinite()) throw std::domain_error("BallPoint coordinates must be finite");
  radius_ = coords_.norm();
  if (radius_ >= 1.0 - kBoundaryMargin)
    throw std::domain_error("point too close to the boundary sphere: |x| = " +
                            std::to_string(radius_));
}

BallPoint BallPoint::origin(int n) { return BallPoint(Eigen::VectorXd::Zero(n)); }

double bracket(const BallPoint& x, const BallPoint& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  const double diff2 = (x.coords() - y.coords()).squaredNorm();
  const double wx = (1.0 - x.radius()) * (1.0 + x.radius());
  const double wy = (1.0 - y.radius()) * (1.0 + y.radius());
  return std::sqrt(diff2 + wx * wy);
}

double hyp_distance(const BallPoint& x, const BallPoint& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("hyp_distance: dimension mismatch");
  const double num = (x.coords() - y.coords()).norm();
  if (num == 0.0) return 0.0;
  // num / bracket < 1 always: bracket^2 - num^2 = (1-|x|^2)(1-|y|^2) > 0.
  return 2.0 * atanh_clamped(num / bracket(x, y));
}

GeodesicPolar to_geodesic_polar(const BallPoint& x) {
  const double rho = x.radius();
  if (rho < 1e-15) throw singularity_error("geodesic polar coordinates undefined at the origin");
  return GeodesicPolar{2.0 * atanh_clamped(rho), x.coords() / rho};
}

BallPoint from_geodesic_polar(const GeodesicPolar& polar) {
  check_positive(polar.radius, "geodesic polar radius");
  const double dirnorm = polar.direction.norm();
  if (std::abs(dirnorm - 1.0) > 1e-9)
    throw std::domain_error("geodesic polar direction must be a unit vector");
  return BallPoint(std::tanh(polar.radius / 2.0) * (polar.direction / dirnorm));
}

MobiusMap::MobiusMap(Eigen::MatrixXd pre, Eigen::VectorXd center, Eigen::MatrixXd post)
    : pre_(std::move(pre)), center_(std::move(center)), post_(std::move(post)) {}

MobiusMap::MobiusMap(int n)
    : pre_(Eigen::MatrixXd::Identity(n, n)),
      center_(Eigen::VectorXd::Zero(n)),
      post_(Eigen::MatrixXd::Identity(n, n)) {
  if (n < 2) throw std::invalid_argument("MobiusMap needs dimension >= 2");
}

MobiusMap MobiusMap::to_origin(const BallPoint& center) {
  const int n = center.dim();
  return MobiusMap(Eigen::MatrixXd::Identity(n, n), center.coords(),
                   Eigen::MatrixXd::Identity(n, n));
}

MobiusMap mobius_to_origin(const BallPoint& center) { return MobiusMap::to_origin(center); }

namespace {

void check_orthogonal(const Eigen::MatrixXd& q, int n) {
  if (q.rows() != n || q.cols() != n)
    throw std::invalid_argument("rotation block has wrong dimensions");
  const double defect =
      (q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::invalid_argument("rotation block is not orthogonal (defect " +
                                std::to_string(defect) + ")");
}

// Core translation t_c(x) = ((1-|c|^2)(x - c) - |x - c|^2 c) / [x, c]^2.
// t_0 = identity, t_c(c) = 0, t_c(0) = -c, and |t_c(x)| = |x - c| / [x, c].
Eigen::VectorXd translate(const Eigen::VectorXd& c, const Eigen::VectorXd& x) {
  const Eigen::VectorXd d = x - c;
  const double d2 = d.squaredNorm();
  const double wc = (1.0 - c.norm()) * (1.0 + c.norm());
  const double wx = (1.0 - x.norm()) * (1.0 + x.norm());
  const double denom = d2 + wc * wx;  // [x, c]^2
  if (denom <= 0.0) throw singularity_error("Moebius translation degenerate at the boundary");
  return (wc * d - d2 * c) / denom;
}

}  // namespace

MobiusMap MobiusMap::rotated(const Eigen::MatrixXd& q) const {
  check_orthogonal(q, dim());
  return MobiusMap(pre_, center_, q * post_);
}

MobiusMap MobiusMap::pre_rotated(const Eigen::MatrixXd& q) const {
  check_orthogonal(q, dim());
  return MobiusMap(pre_ * q, center_, post_);
}

MobiusMap MobiusMap::inverse() const {
  // (post * t_c * pre)^-1 = pre^T * t_c^-1 * post^T and t_c^-1 = (-I) t_c (-I),
  // so the inverse is again of the stored form with the signs folded into the
  // orthogonal blocks.
  return MobiusMap(-post_.transpose(), center_, -pre_.transpose());
}

Eigen::VectorXd MobiusMap::apply(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size()) throw std::invalid_argument("MobiusMap: dimension mismatch");
  return post_ * translate(center_, pre_ * x);
}

BallPoint MobiusMap::operator()(const BallPoint& x) const { return BallPoint(apply(x.coords())); }

Annulus normalize_annulus(const BallPoint& center, double p, double q) {
  check_positive(p, "inner hyperbolic radius");
  check_positive(q, "outer hyperbolic radius");
  if (!(p < q)) throw std::domain_error("normalize_annulus requires p < q");
  (void)center;  // the center fixes the Moebius translation; radii do not depend on it
  return Annulus{std::tanh(p / 2.0), std::tanh(q / 2.0), p, q};
}

AnnulusPair AnnulusPair::from_euclidean(double a, double b, double alpha, double beta) {
  check_unit_radius(a, "a");
  check_unit_radius(b, "b");
  check_unit_radius(alpha, "alpha");
  check_unit_radius(beta, "beta");
  if (!(a < b)) throw std::domain_error("AnnulusPair requires a < b");
  if (!(alpha < beta)) throw std::domain_error("AnnulusPair requires alpha < beta");
  AnnulusPair pair;
  pair.a_ = a;
  pair.b_ = b;
  pair.alpha_ = alpha;
  pair.beta_ = beta;
  pair.a_h_ = 2.0 * atanh_clamped(a);
  pair.b_h_ = 2.0 * atanh_clamped(b);
  pair.alpha_h_ = 2.0 * atanh_clamped(alpha);
  pair.beta_h_ = 2.0 * atanh_clamped(beta);
  return pair;
}

AnnulusPair AnnulusPair::from_hyperbolic(double a_h, double b_h, double alpha_h, double beta_h) {
  check_positive(a_h, "a_h");
  check_positive(b_h, "b_h");
  check_positive(alpha_h, "alpha_h");
  check_positive(beta_h, "beta_h");
  if (!(a_h < b_h)) throw std::domain_error("AnnulusPair requires a_h < b_h");
  if (!(alpha_h < beta_h)) throw std::domain_error("AnnulusPair requires alpha_h < beta_h");
  AnnulusPair pair;
  pair.a_h_ = a_h;
  pair.b_h_ = b_h;
  pair.alpha_h_ = alpha_h;
  pair.beta_h_ = beta_h;
  pair.a_ = std::tanh(a_h / 2.0);
  pair.b_ = std::tanh(b_h / 2.0);
  pair.alpha_ = std::tanh(alpha_h / 2.0);
  pair.beta_ = std::tanh(beta_h / 2.0);
  return pair;
}

}  // namespace hyharm::geometry
