#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace hyharm::linalg {

// Singular values below kRankTolerance * sigma_max are treated as zero when
// forming the distortion ratio; the matrix then counts as singular and the
// ratio is +infinity.
inline constexpr double kRankTolerance = 1e-13;

// Spectral data of a square matrix.  Singular values are ascending.
// `distortion` is sigma_max / sigma_min (+infinity when singular); its
// limit convention matches bound_factor below.  `adjugate` satisfies
// A * adjugate = det(A) * I.
struct MatrixAnalysis {
  Eigen::MatrixXd entries;
  Eigen::VectorXd singular_values;  // ascending
  double hs_norm = 0.0;             // Frobenius / Hilbert-Schmidt norm
  double op_norm = 0.0;             // sigma_max
  double distortion = 0.0;          // sigma_max / sigma_min, may be +inf
  double determinant = 0.0;
  Eigen::MatrixXd adjugate;
};

MatrixAnalysis analyze(const Eigen::MatrixXd& a);

// Classical adjugate: transpose of the cofactor matrix, A * adj(A) = det(A) I.
Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a);

// Cofactor matrix cof(A) = adj(A)^T.  This is the matrix that transports
// (n-1)-fold cross products: A x_1 x ... x A x_{n-1} = cof(A) (x_1 x ... x x_{n-1}).
Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& a);

// Generalized cross product of n-1 vectors in R^n, defined by
// <cross(x_1..x_{n-1}), v> = det[x_1; ...; x_{n-1}; v] (rows).  For n = 3 this
// is the usual cross product with e1 x e2 = e3.
Eigen::VectorXd cross(const std::vector<Eigen::VectorXd>& xs);

// The sharp constant k^2 / (1 + (n-1) k^2) raised to (n-1)/2, where k is the
// distortion ratio.  Increasing in k; equals (1/n)^((n-1)/2) at k = 1 and
// tends to (1/(n-1))^((n-1)/2) as k -> infinity (the convention used for
// singular matrices).
double bound_factor(double distortion, int n);

struct CrossInequalityCheck {
  double lhs = 0.0;    // |A x_1 x ... x A x_{n-1}|
  double rhs = 0.0;    // bound_factor * hs_norm^(n-1) * |x_1 x ... x x_{n-1}|
  double slack = 0.0;  // rhs - lhs
  bool holds = false;  // lhs <= rhs up to a relative rounding allowance
};

// Evaluates both sides of the cross-product distortion inequality
//   |A x_1 x ... x A x_{n-1}| <= bound_factor(k, n) * ||A||_HS^(n-1) * |x_1 x ... x x_{n-1}|,
// where ||.||_HS is the Hilbert-Schmidt norm; the factor and norm power trade
// off so that orthogonal matrices attain equality for every input.
CrossInequalityCheck verify_cross_inequality(const Eigen::MatrixXd& a,
                                             const std::vector<Eigen::VectorXd>& xs);

// | cof(A) (x_1 x ... x x_{n-1})  -  A x_1 x ... x A x_{n-1} |, which is zero
// in exact arithmetic for every square A including singular ones.
double adjugate_identity_residual(const Eigen::MatrixXd& a,
                                  const std::vector<Eigen::VectorXd>& xs);

}  // namespace hyharm::linalg
