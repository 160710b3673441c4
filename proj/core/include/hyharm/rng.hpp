#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace hyharm {

// Seeded random source with platform-stable output.  std::mt19937_64 produces
// an identical bit stream everywhere; the floating-point helpers below avoid
// std::uniform_real_distribution, whose output is implementation-defined, so
// reports generated from a fixed seed are byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; one fresh pair per call keeps the stream position easy to
    // reason about when tests interleave scalar and vector draws.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  Eigen::VectorXd uniform_vector(int n, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v(n);
    double norm = 0.0;
    do {
      for (int i = 0; i < n; ++i) v[i] = normal();
      norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
  }

  // Uniform w.r.t. Lebesgue measure on the ball of radius rmax.
  Eigen::VectorXd ball_point(int n, double rmax) {
    const double r = rmax * std::pow(uniform(), 1.0 / n);
    return r * unit_vector(n);
  }

  // Point with radius uniform in [rlo, rhi] and uniform direction.
  Eigen::VectorXd annulus_point(int n, double rlo, double rhi) {
    return uniform(rlo, rhi) * unit_vector(n);
  }

  Eigen::MatrixXd matrix_uniform(int rows, int cols, double lo, double hi) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  // Haar-ish orthogonal matrix: QR of a Gaussian matrix with the sign of the
  // R diagonal folded into Q.
  Eigen::MatrixXd orthogonal(int n) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
  }

  Eigen::MatrixXd rotation(int n) {
    Eigen::MatrixXd q = orthogonal(n);
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hyharm
