#include <benchmark/benchmark.h>

#include <hyharm/bounds.hpp>
#include <hyharm/linalg.hpp>
#include <hyharm/quadrature.hpp>
#include <hyharm/radial.hpp>
#include <hyharm/rng.hpp>
#include <hyharm/tension.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace {

using namespace hyharm;

void BM_BoundForms(benchmark::State& state) {
  const double a_h = 2.0 * std::atanh(0.2), b_h = 2.0 * std::atanh(0.8);
  const double alpha_h = 2.0 * std::atanh(0.3), beta_h = 2.0 * std::atanh(0.9);
  for (auto _ : state) {
    const auto g = bounds::check_grad(0.2, 0.8, 0.3, 0.9);
    const auto r = bounds::check_ratio(a_h, b_h, alpha_h, beta_h);
    const auto p = bounds::check_product(0.2, 0.8, alpha_h, beta_h);
    benchmark::DoNotOptimize(g.margin + r.margin + p.margin);
  }
}
BENCHMARK(BM_BoundForms);

// Near-degenerate annulus: exercises the series branch of the cancellation
// kernel in the bound's right-hand side.
void BM_BoundRhsNearDegenerate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::grad_rhs(0.7999999, 0.8));
  }
}
BENCHMARK(BM_BoundRhsNearDegenerate);

void BM_IntegrateMinimalTrajectory(benchmark::State& state) {
  for (auto _ : state) {
    const auto profile = radial::integrate_ivp(std::log(0.3), 0.5, 0.0, std::log(0.8));
    benchmark::DoNotOptimize(profile.y.back());
  }
}
BENCHMARK(BM_IntegrateMinimalTrajectory);

void BM_ShootIdentityData(benchmark::State& state) {
  const double a_h = 2.0 * std::atanh(0.2), b_h = 2.0 * std::atanh(0.8);
  for (auto _ : state) {
    const auto shot = radial::solve_radial_bvp(a_h, b_h, a_h, b_h);
    benchmark::DoNotOptimize(shot.initial_slope);
  }
}
BENCHMARK(BM_ShootIdentityData);

void BM_CrossInequalityTrial(benchmark::State& state) {
  Rng rng(42);
  std::vector<Eigen::MatrixXd> mats;
  std::vector<std::vector<Eigen::VectorXd>> inputs;
  for (int i = 0; i < 256; ++i) {
    mats.push_back(rng.matrix_uniform(3, 3, -2.0, 2.0));
    inputs.push_back({rng.uniform_vector(3, -2.0, 2.0), rng.uniform_vector(3, -2.0, 2.0)});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto chk = linalg::verify_cross_inequality(mats[i], inputs[i]);
    benchmark::DoNotOptimize(chk.slack);
    i = (i + 1) % mats.size();
  }
}
BENCHMARK(BM_CrossInequalityTrial);

void BM_TensionResidualsAtPoint(benchmark::State& state) {
  const auto field = tension::identity_map();
  const Eigen::Vector3d x(0.31, -0.22, 0.4);
  for (auto _ : state) {
    const double t1 = tension::tau1(field, x);
    const Eigen::Vector2d ta = tension::tau_angular(field, x);
    const double hl = tension::hyplap_residual(field, x);
    benchmark::DoNotOptimize(t1 + ta.sum() + hl);
  }
}
BENCHMARK(BM_TensionResidualsAtPoint);

void BM_SphereBoundIntegral(benchmark::State& state) {
  const auto field = tension::identity_map();
  const auto surface = quadrature::sphere_surface(1.0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto chk = quadrature::check_surface_bound(field, surface, order);
    benchmark::DoNotOptimize(chk.ratio);
  }
}
BENCHMARK(BM_SphereBoundIntegral)->Arg(8)->Arg(16)->Arg(24)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
