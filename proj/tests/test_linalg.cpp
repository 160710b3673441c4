#include "hyharm/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hyharm/rng.hpp"
#include "support.hpp"

using hyharm::Rng;
using hyharm::testing::abs_err;
using hyharm::testing::rel_err;
namespace la = hyharm::linalg;

namespace {

Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

std::vector<Eigen::VectorXd> basis_pair(int i, int j) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(3), b = Eigen::VectorXd::Zero(3);
  a[i] = 1.0;
  b[j] = 1.0;
  return {a, b};
}

}  // namespace

TEST_CASE("the generalized cross product matches the right-handed conventions") {
  CHECK((la::cross(basis_pair(0, 1)) - vec3(0, 0, 1)).norm() == 0.0);
  CHECK((la::cross(basis_pair(1, 2)) - vec3(1, 0, 0)).norm() == 0.0);
  CHECK((la::cross(basis_pair(2, 0)) - vec3(0, 1, 0)).norm() == 0.0);

  // Antisymmetry and orthogonality to the arguments.
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(3, -2.0, 2.0);
    const Eigen::VectorXd y = rng.uniform_vector(3, -2.0, 2.0);
    const Eigen::VectorXd c = la::cross({x, y});
    CHECK((c + la::cross({y, x})).norm() < 1e-14);
    CHECK(std::abs(c.dot(x)) < 1e-13);
    CHECK(std::abs(c.dot(y)) < 1e-13);
    // Against Eigen's built-in three-dimensional product.
    const Eigen::Vector3d ref = Eigen::Vector3d(x).cross(Eigen::Vector3d(y));
    CHECK((c - Eigen::VectorXd(ref)).norm() < 1e-14);
  }
}

TEST_CASE("the cross product generalizes to dimension 4") {
  std::vector<Eigen::VectorXd> es;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
    e[i] = 1.0;
    es.push_back(e);
  }
  Eigen::VectorXd e4 = Eigen::VectorXd::Zero(4);
  e4[3] = 1.0;
  CHECK((la::cross(es) - e4).norm() == 0.0);

  // Orthogonality to all arguments for random 4-vectors.
  Rng rng(21);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(rng.uniform_vector(4, -1.0, 1.0));
  const Eigen::VectorXd c = la::cross(xs);
  for (const auto& x : xs) CHECK(std::abs(c.dot(x)) < 1e-13);

  CHECK_THROWS_AS(la::cross({vec3(1, 0, 0)}), std::invalid_argument);
}

TEST_CASE("analyze reports spectral data matching a 30-digit reference") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 0, 0, 1, 3, 1, 0, 1;
  const la::MatrixAnalysis ma = la::analyze(a);
  REQUIRE(ma.singular_values.size() == 3);
  CHECK(rel_err(ma.singular_values[0], 0.985773034296416013023) < 1e-13);
  CHECK(rel_err(ma.singular_values[1], 2.0734198349675499934) < 1e-13);
  CHECK(rel_err(ma.singular_values[2], 3.42478929465991743493) < 1e-13);
  CHECK(rel_err(ma.op_norm, 3.42478929465991743493) < 1e-13);
  CHECK(rel_err(ma.hs_norm, 4.12310562561766054982) < 1e-14);
  CHECK(rel_err(ma.distortion, 3.47421685875625598142) < 1e-12);
  CHECK(rel_err(ma.determinant, 7.0) < 1e-14);
  // Defining property of the adjugate.
  CHECK((a * ma.adjugate - 7.0 * Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("analyze flags singular matrices with an infinite distortion ratio") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 4.0;
  const la::MatrixAnalysis ma = la::analyze(a);
  CHECK(std::isinf(ma.distortion));
  CHECK(ma.op_norm == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(ma.hs_norm == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(ma.determinant == doctest::Approx(0.0));
  CHECK((a * ma.adjugate).norm() < 1e-12);  // det = 0 so A adj(A) = 0

  CHECK_THROWS_AS(la::analyze(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(la::analyze(bad), std::domain_error);
}

TEST_CASE("singular values are invariant under orthogonal factors") {
  Rng rng(300);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXd a = rng.matrix_uniform(3, 3, -2.0, 2.0);
    const Eigen::MatrixXd q = rng.orthogonal(3);
    const auto sv0 = la::analyze(a).singular_values;
    const auto sv1 = la::analyze(q * a).singular_values;
    CHECK((sv0 - sv1).cwiseAbs().maxCoeff() < 1e-11 * (1.0 + sv0[2]));
  }
}

TEST_CASE("the cofactor matrix, not the adjugate, transports cross products") {
  // A shear separates the two: they differ by a transpose.
  Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(3, 3);
  shear(0, 1) = 1.0;
  const Eigen::VectorXd x = vec3(1, 0, 0), y = vec3(0, 0, 1);
  const Eigen::VectorXd expected = la::cross({Eigen::VectorXd(shear * x), Eigen::VectorXd(shear * y)});
  CHECK((la::cofactor_matrix(shear) * la::cross({x, y}) - expected).norm() < 1e-15);
  CHECK((la::adjugate(shear) * la::cross({x, y}) - expected).norm() > 0.5);
  CHECK(la::adjugate_identity_residual(shear, {x, y}) < 1e-15);
}

TEST_CASE("the cross-product transport identity holds for random and rank-deficient matrices") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Eigen::MatrixXd a = rng.matrix_uniform(3, 3, -1.5, 1.5);
    if (i % 4 == 0) a.col(2) = 0.5 * a.col(0) - a.col(1);  // force rank deficiency
    const Eigen::VectorXd x = rng.uniform_vector(3, -2.0, 2.0);
    const Eigen::VectorXd y = rng.uniform_vector(3, -2.0, 2.0);
    const double scale = a.norm() * a.norm() * x.norm() * y.norm() + 1.0;
    CHECK(la::adjugate_identity_residual(a, {x, y}) < 1e-12 * scale);
  }
}

TEST_CASE("the distortion factor is monotone with the expected endpoints") {
  CHECK(la::bound_factor(1.0, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(la::bound_factor(std::numeric_limits<double>::infinity(), 3) ==
        doctest::Approx(0.5).epsilon(1e-16));
  CHECK(rel_err(la::bound_factor(std::numeric_limits<double>::infinity(), 4),
                0.192450089729875254836) < 1e-15);
  double prev = 0.0;
  for (double k = 1.0; k < 100.0; k *= 1.7) {
    const double f = la::bound_factor(k, 3);
    CHECK(f > prev);
    CHECK(f < 0.5);
    prev = f;
  }
  CHECK_THROWS_AS(la::bound_factor(0.5, 3), std::domain_error);
  CHECK_THROWS_AS(la::bound_factor(2.0, 1), std::invalid_argument);
}

TEST_CASE("the distortion inequality holds on random matrices and vectors") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Eigen::MatrixXd a = rng.matrix_uniform(3, 3, -2.0, 2.0);
    if (i % 7 == 0) a.row(1) = a.row(0);  // singular cases use the limit factor
    const Eigen::VectorXd x = rng.uniform_vector(3, -2.0, 2.0);
    const Eigen::VectorXd y = rng.uniform_vector(3, -2.0, 2.0);
    const la::CrossInequalityCheck check = la::verify_cross_inequality(a, {x, y});
    CHECK(check.holds);
    CHECK(check.slack >= -1e-12 * std::max(1.0, check.rhs));
  }
}

TEST_CASE("the inequality is attained by the known equality families") {
  // Orthogonal matrices: distortion 1, factor 1/3, squared Hilbert-Schmidt
  // norm 3, and rotated cross products keep their length, so lhs = rhs always.
  Rng rng(99);
  for (int i = 0; i < 25; ++i) {
    const Eigen::MatrixXd q = rng.orthogonal(3);
    const Eigen::VectorXd x = rng.uniform_vector(3, -1.0, 1.0);
    const Eigen::VectorXd y = rng.uniform_vector(3, -1.0, 1.0);
    const la::CrossInequalityCheck check = la::verify_cross_inequality(q, {x, y});
    CHECK(abs_err(check.lhs, check.rhs) < 1e-12 * std::max(1.0, check.rhs));
  }

  // diag(1, k, k) acting on the two axes stretched by k: both sides equal k^2.
  for (double k : {1.0, 2.0, 10.0}) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
    a(1, 1) = k;
    a(2, 2) = k;
    const la::CrossInequalityCheck check = la::verify_cross_inequality(a, basis_pair(1, 2));
    CHECK(rel_err(check.lhs, k * k) < 1e-12);
    CHECK(rel_err(check.rhs, k * k) < 1e-12);
  }

  // The degenerate projection diag(0, 1, 1) attains the singular-limit factor.
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(3, 3);
  proj(0, 0) = 0.0;
  const la::CrossInequalityCheck check = la::verify_cross_inequality(proj, basis_pair(1, 2));
  CHECK(rel_err(check.lhs, 1.0) < 1e-14);
  CHECK(rel_err(check.rhs, 1.0) < 1e-14);
}
