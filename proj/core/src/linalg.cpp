#include "hyharm/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyharm::linalg {

namespace {

void check_square(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 2)
    throw std::invalid_argument("expected a square matrix of dimension >= 2");
  if (!a.allFinite()) throw std::domain_error("matrix entries must be finite");
}

// Minor of `a` with row i and column j removed.
Eigen::MatrixXd drop_row_col(const Eigen::MatrixXd& a, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd m(n - 1, n - 1);
  for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
      if (c == j) continue;
      m(rr, cc++) = a(r, c);
    }
    ++rr;
  }
  return m;
}

}  // namespace

Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& a) {
  check_square(a);
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd cof(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double minor = drop_row_col(a, i, j).determinant();
      cof(i, j) = (((i + j) % 2) == 0) ? minor : -minor;
    }
  return cof;
}

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a) { return cofactor_matrix(a).transpose(); }

MatrixAnalysis analyze(const Eigen::MatrixXd& a) {
  check_square(a);
  MatrixAnalysis out;
  out.entries = a;

  // Singular values via the symmetric eigenproblem of A^T A: cheaper than a
  // full SVD and accurate enough here, where only the extreme singular values
  // feed the distortion ratio.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigen decomposition of A^T A failed");
  out.singular_values = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();  // ascending

  out.hs_norm = a.norm();
  out.op_norm = out.singular_values[out.singular_values.size() - 1];
  const double sigma_min = out.singular_values[0];
  if (sigma_min <= kRankTolerance * out.op_norm || out.op_norm == 0.0)
    out.distortion = std::numeric_limits<double>::infinity();
  else
    out.distortion = out.op_norm / sigma_min;
  out.determinant = a.determinant();
  out.adjugate = adjugate(a);
  return out;
}

Eigen::VectorXd cross(const std::vector<Eigen::VectorXd>& xs) {
  if (xs.empty()) throw std::invalid_argument("cross: needs n-1 vectors of dimension n");
  const Eigen::Index n = xs[0].size();
  if (static_cast<Eigen::Index>(xs.size()) != n - 1)
    throw std::invalid_argument("cross: expected " + std::to_string(n - 1) +
                                " vectors of dimension " + std::to_string(n));
  Eigen::MatrixXd rows(n - 1, n);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    if (xs[i].size() != n) throw std::invalid_argument("cross: dimension mismatch");
    rows.row(i) = xs[i].transpose();
  }
  // Coordinate j is the signed maximal minor: expanding det[x_1;..;x_{n-1}; e_j]
  // along its last row gives (-1)^(n+j) times the minor without column j
  // (1-based indices).
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
      if (c == j) continue;
      minor.col(cc++) = rows.col(c);
    }
    const double det = minor.determinant();
    out[j] = (((n + j + 1) % 2) == 0) ? det : -det;  // (-1)^(n + (j+1)) 1-based
  }
  return out;
}

double bound_factor(double distortion, int n) {
  if (n < 2) throw std::invalid_argument("bound_factor: dimension must be >= 2");
  if (!(distortion >= 1.0))
    throw std::domain_error("bound_factor: distortion ratio must be >= 1");
  const double m = static_cast<double>(n - 1);
  double base;
  if (std::isinf(distortion)) {
    base = 1.0 / m;
  } else {
    const double k2 = distortion * distortion;
    base = k2 / (1.0 + m * k2);
  }
  return std::pow(base, m / 2.0);
}

CrossInequalityCheck verify_cross_inequality(const Eigen::MatrixXd& a,
                                             const std::vector<Eigen::VectorXd>& xs) {
  check_square(a);
  const Eigen::Index n = a.rows();
  std::vector<Eigen::VectorXd> images;
  images.reserve(xs.size());
  for (const auto& x : xs) images.push_back(a * x);

  const MatrixAnalysis ma = analyze(a);
  CrossInequalityCheck out;
  out.lhs = cross(images).norm();
  out.rhs = bound_factor(ma.distortion, static_cast<int>(n)) *
            std::pow(ma.hs_norm, static_cast<double>(n - 1)) * cross(xs).norm();
  out.slack = out.rhs - out.lhs;
  const double scale = std::max({1.0, out.lhs, out.rhs});
  out.holds = out.lhs <= out.rhs + 1e-12 * scale;
  return out;
}

double adjugate_identity_residual(const Eigen::MatrixXd& a,
                                  const std::vector<Eigen::VectorXd>& xs) {
  check_square(a);
  std::vector<Eigen::VectorXd> images;
  images.reserve(xs.size());
  for (const auto& x : xs) images.push_back(a * x);
  return (cofactor_matrix(a) * cross(xs) - cross(images)).norm();
}

}  // namespace hyharm::linalg
