// Acceptance harness: one verdict line per criterion, with the measured
// quantity and its pinned threshold inline.  Exit code = number of failed
// criteria.  Usage: hyharm_acceptance <cli-binary> <report-schema.json>

#include "cli_helpers.hpp"

#include "maps.hpp"
#include "sweep.hpp"

#include <hyharm/bounds.hpp>
#include <hyharm/geometry.hpp>
#include <hyharm/linalg.hpp>
#include <hyharm/quadrature.hpp>
#include <hyharm/radial.hpp>
#include <hyharm/rng.hpp>
#include <hyharm/tension.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

namespace {

using cli_test::json;

std::string g_cli;
std::string g_schema;
int g_failures = 0;

double rel_err(double got, double want) {
  const double denom = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / denom;
}

std::string fmt(const char* pattern, double a, double b) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, pattern, a, b);
  return buffer;
}

void verdict(int index, const std::string& name, bool ok, const std::string& detail,
             double elapsed_s, double budget_s) {
  const bool in_budget = elapsed_s <= budget_s;
  std::printf("%s [%2d] %s (%s; %.2fs of %.0fs budget)\n", (ok && in_budget) ? "PASS" : "FAIL",
              index, name.c_str(), detail.c_str(), elapsed_s, budget_s);
  if (!(ok && in_budget)) ++g_failures;
}

template <typename Body>
void criterion(int index, const std::string& name, double budget_s, Body body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start).count();
  verdict(index, name, ok, detail, elapsed, budget_s);
}

Eigen::Vector3d annulus_sample(hyharm::Rng& rng, double lo, double hi, double margin = 0.3) {
  const double r = rng.uniform(lo, hi);
  const double theta = rng.uniform(margin, std::numbers::pi - margin);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
          r * std::cos(theta)};
}

cli_test::CliResult invoke(const std::string& args) {
  return cli_test::run_process(g_cli + " " + args);
}

}  // namespace

int main(int argc, char** argv) {
  g_cli = argc > 1 ? argv[1] : cli_test::cli_binary();
  g_schema = argc > 2 ? argv[2] : cli_test::schema_path();
  if (g_cli.empty() || g_schema.empty()) {
    std::fprintf(stderr, "usage: %s <cli-binary> <report-schema.json>\n", argv[0]);
    return 64;
  }

  using namespace hyharm;

  criterion(1, "closed-form bound kernels match pinned reference values", 1.0,
            [](std::string& detail) {
    double worst = 0.0;
    worst = std::max(worst, rel_err(bounds::grad_rhs(0.5, 0.9), 0.0604042362130597377128));
    worst = std::max(worst, rel_err(bounds::grad_rhs(0.2, 0.8), 0.321226254182406222619));
    worst = std::max(worst, rel_err(bounds::grad_lhs(0.5, 0.9), 0.415311005362124422938));
    worst = std::max(worst, rel_err(bounds::ratio_min(0.4, 2.2, 0.3), 1.69168603028505388077));
    worst = std::max(worst, rel_err(bounds::ratio_min(1.0, 2.0, 0.5), 1.15363535054824836581));
    worst = std::max(worst, rel_err(bounds::slope_factor(1.0), 3.62686040784701876767));
    detail = fmt("max rel err %.2e <= %.0e", worst, 1e-12);
    return worst <= 1e-12;
  });

  criterion(2, "shooting reproduces the exact identity-data profile", 2.0,
            [](std::string& detail) {
    const double a_h = 2.0 * std::atanh(0.2);
    const double b_h = 2.0 * std::atanh(0.8);
    const auto shot = radial::solve_radial_bvp(a_h, b_h, a_h, b_h);
    if (!shot.converged || !shot.proper) {
      detail = "shooting did not converge to a proper profile";
      return false;
    }
    const double slope_err = std::abs(shot.initial_slope - 5.0 / 12.0);
    double worst = 0.0;
    const double t0 = std::log(0.2), t1 = std::log(0.8);
    for (int i = 0; i <= 100; ++i) {
      const double t = t0 + (t1 - t0) * i / 100.0;
      worst = std::max(worst, std::abs(shot.profile.sample_y(t) - 2.0 * std::atanh(std::exp(t))));
    }
    detail = fmt("profile err %.2e <= 1e-08, slope err %.2e <= 1e-06", worst, slope_err);
    return worst <= 1e-8 && slope_err <= 1e-6;
  });

  criterion(3, "75-point sweep: extremal radial solutions satisfy the product bound", 30.0,
            [](std::string& detail) {
    const auto outcome = cli::run_sweep(cli::default_sweep_grid());
    const int cases = outcome.aggregate.at("cases").get<int>();
    const int converged = outcome.aggregate.at("converged").get<int>();
    const int divergent = outcome.aggregate.at("divergent").get<int>();
    const double min_margin = outcome.aggregate.at("min_margin").get<double>();
    const double residual = outcome.aggregate.at("max_abs_residual").get<double>();
    detail = fmt("0 violations, min margin %.2e > 0, max residual %.2e <= 1e-10", min_margin,
                 residual) +
             ", " + std::to_string(converged) + " ok + " + std::to_string(divergent) +
             " divergent = " + std::to_string(cases);
    return outcome.violations == 0 && cases == 75 && converged + divergent == cases &&
           divergent > 0 && min_margin > 0.0 && residual <= 1e-10;
  });

  criterion(4, "a solved radial profile promoted to a 3-d map is tension-free", 5.0,
            [](std::string& detail) {
    const double a_h = 0.9, b_h = 2.4, alpha_h = 0.8;
    const double a = std::tanh(a_h / 2.0), b = std::tanh(b_h / 2.0);
    const auto minimal = radial::integrate_ivp(std::log(a), alpha_h, 0.0, std::log(b));
    const double beta_h = minimal.y.back() + 0.5;
    const auto shot = radial::solve_radial_bvp(a_h, b_h, alpha_h, beta_h);
    if (!shot.converged) {
      detail = "shooting did not converge";
      return false;
    }
    const auto field = tension::radial_sampler_map(
        {[&shot](double t) { return shot.profile.sample_y(t); }});
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Eigen::Vector3d x = annulus_sample(rng, a * 1.02, b * 0.98);
      const double t1 = tension::tau1(field, x);
      const Eigen::Vector2d ta = tension::tau_angular(field, x);
      const double hl = tension::hyplap_residual(field, x);
      worst = std::max({worst, std::abs(t1), std::abs(ta[0]), std::abs(ta[1]), std::abs(hl)});
    }
    detail = fmt("max residual %.2e <= %.0e over 50 samples", worst, 1e-4);
    return worst <= 1e-4;
  });

  criterion(5, "cross-product inequality fuzz: 100000 matrices, equality families", 10.0,
            [](std::string& detail) {
    Rng rng(12345);
    const int n = 3;
    double family_gap = 0.0;
    for (int i = 0; i < 20; ++i) {
      std::vector<Eigen::VectorXd> xs = {rng.uniform_vector(n, -2.0, 2.0),
                                         rng.uniform_vector(n, -2.0, 2.0)};
      const auto chk = linalg::verify_cross_inequality(rng.orthogonal(n), xs);
      family_gap = std::max(family_gap,
                            std::abs(chk.lhs - chk.rhs) / std::max(chk.rhs, 1e-300));
    }
    const std::vector<Eigen::VectorXd> basis = {Eigen::VectorXd::Unit(n, 1),
                                                Eigen::VectorXd::Unit(n, 2)};
    for (const double k : {1.0, 2.0, 5.0, 10.0}) {
      const Eigen::Vector3d d(1.0, k, k);
      const auto chk = linalg::verify_cross_inequality(d.asDiagonal(), basis);
      family_gap = std::max(family_gap,
                            std::abs(chk.lhs - chk.rhs) / std::max(chk.rhs, 1e-300));
    }
    {
      const Eigen::Vector3d d(0.0, 1.0, 1.0);
      const auto chk = linalg::verify_cross_inequality(d.asDiagonal(), basis);
      family_gap = std::max(family_gap,
                            std::abs(chk.lhs - chk.rhs) / std::max(chk.rhs, 1e-300));
    }

    int violations = 0;
    double max_adjugate = 0.0;
    for (int t = 0; t < 100000; ++t) {
      Eigen::MatrixXd a = rng.matrix_uniform(n, n, -2.0, 2.0);
      if (t % 7 == 3) a.row(n - 1) = a.row(0) + a.row(1);
      if (t % 11 == 5) a *= 50.0;
      std::vector<Eigen::VectorXd> xs = {rng.uniform_vector(n, -2.0, 2.0),
                                         rng.uniform_vector(n, -2.0, 2.0)};
      const auto chk = linalg::verify_cross_inequality(a, xs);
      if (!chk.holds) ++violations;
      const double scale =
          std::pow(a.norm(), n - 1) * xs[0].norm() * xs[1].norm() + 1.0;
      max_adjugate = std::max(max_adjugate,
                              linalg::adjugate_identity_residual(a, xs) / scale);
    }
    detail = std::to_string(violations) +
             fmt(" violations, family gap %.2e <= 1e-12, transport residual %.2e <= 1e-10",
                 family_gap, max_adjugate);
    return violations == 0 && family_gap <= 1e-12 && max_adjugate <= 1e-10;
  });

  criterion(6, "identity and inversion maps have vanishing tension residuals", 5.0,
            [](std::string& detail) {
    Rng rng(7);
    double worst = 0.0;
    const auto probe = [&](const tension::MapField& field, double lo, double hi) {
      for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d x = annulus_sample(rng, lo, hi);
        const double t1 = tension::tau1(field, x);
        const Eigen::Vector2d ta = tension::tau_angular(field, x);
        const double hl = tension::hyplap_residual(field, x);
        worst = std::max({worst, std::abs(t1), std::abs(ta[0]), std::abs(ta[1]), std::abs(hl)});
      }
    };
    probe(tension::identity_map(), 0.25, 0.8);
    probe(tension::inversion_map(), 1.2, 1.8);
    detail = fmt("max residual %.2e <= %.0e over 100 samples", worst, 1e-5);
    return worst <= 1e-5;
  });

  criterion(7, "radial direction energy attains the sphere and shell bounds", 5.0,
            [](std::string& detail) {
    const auto id = tension::identity_map();
    double worst_surface = 0.0;
    bool holds = true;
    for (const double r : {0.5, 1.0, 2.0}) {
      const auto chk = quadrature::check_surface_bound(id, quadrature::sphere_surface(r), 24);
      worst_surface = std::max(worst_surface, std::abs(chk.ratio - 1.0));
      holds = holds && chk.holds;
    }
    const auto vol = quadrature::check_volume_bound(id, 0.5, 1.0, 24);
    const double vol_err = std::abs(vol.ratio - 1.0);
    holds = holds && vol.holds;
    detail = fmt("sphere equality gap %.2e <= 1e-08, shell gap %.2e <= 1e-07", worst_surface,
                 vol_err);
    return holds && worst_surface <= 1e-8 && vol_err <= 1e-7;
  });

  criterion(8, "non-round geometry exceeds the integral bound strictly", 5.0,
            [](std::string& detail) {
    const auto id = tension::identity_map();
    const auto ell = quadrature::check_surface_bound(
        id, quadrature::ellipsoid_surface(1.2, 1.0, 0.9), 24);
    const geometry::BallPoint center{Eigen::Vector3d(0.25, -0.1, 0.15)};
    const auto mob = geometry::mobius_to_origin(center);
    tension::MapField twisted;
    twisted.eval = [&mob](const Eigen::Vector3d& x) -> Eigen::Vector3d {
      return Eigen::Vector3d(mob.apply(x));
    };
    const auto tw = quadrature::check_surface_bound(twisted, quadrature::sphere_surface(0.9), 24);
    detail = fmt("ellipsoid ratio %.6f >= 1.01, twisted-sphere ratio %.6f >= 1.001", ell.ratio,
                 tw.ratio);
    return ell.holds && tw.holds && ell.ratio >= 1.01 && tw.ratio >= 1.001;
  });

  criterion(9, "negative controls are detected (wrong variant, drift map, sabotage)", 5.0,
            [](std::string& detail) {
    Rng rng(11);
    double literal_max = 0.0;
    const auto inv = tension::inversion_map();
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector3d x = annulus_sample(rng, 1.2, 1.8);
      literal_max = std::max(literal_max, std::abs(tension::tau1(
          inv, x, {}, tension::Tau1Variant::literal)));
    }
    double drift_max = 0.0;
    const auto drift = tension::constant_direction_map(0.3, 0.2, Eigen::Vector3d(0.6, 0.0, 0.8));
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector3d x = annulus_sample(rng, 0.25, 0.8);
      drift_max = std::max(drift_max, std::abs(tension::tau1(drift, x)));
    }
    const int sabotage_code = invoke("verify-lemma --trials 50 --sabotage").exit_code;
    const int drift_code = invoke("tension --map direction --samples 10").exit_code;
    detail = fmt("literal variant %.2e >= 1e-02, drift map %.2e >= 1e-02", literal_max,
                 drift_max) +
             ", sabotage exit " + std::to_string(sabotage_code) + ", drift exit " +
             std::to_string(drift_code) + " (want 5, 5)";
    return literal_max >= 1e-2 && drift_max >= 1e-2 && sabotage_code == 5 && drift_code == 5;
  });

  criterion(10, "CLI contract: determinism, schema, exit codes, profile round-trip", 10.0,
            [](std::string& detail) {
    const auto first = invoke("sweep");
    const auto second = invoke("sweep");
    const bool deterministic = first.exit_code == 0 && first.output == second.output;

    const json schema = json::parse(cli_test::read_file(g_schema));
    const std::vector<std::string> invocations = {
        "bound --a 0.2 --b 0.8 --alpha 0.3 --beta 0.9",
        "radial --a 0.2 --b 0.8 --identity",
        "sweep --a-count 2 --b-count 2 --alpha-h-count 1",
        "verify-lemma --trials 25",
        "verify-prop --surface sphere --radius 1.0 --order 8",
        "tension --map identity --samples 5",
    };
    bool schema_ok = true;
    for (const auto& args : invocations) {
      const auto res = invoke(args);
      schema_ok = schema_ok && res.exit_code == 0 &&
                  cli_test::validate_report(schema, json::parse(res.output)).empty();
    }

    const bool usage_ok = invoke("bound --a 0.2").exit_code == 2;
    const bool unreachable_ok =
        invoke("radial --a 0.3 --b 0.8 --alpha-h 0.9 --beta-h 0.95").exit_code == 3;
    const bool blowup_ok = invoke("radial --a 0.01 --b 0.9 --alpha-h 25 --beta-h 30").exit_code == 4;
    const bool violation_ok = invoke("verify-lemma --trials 25 --sabotage").exit_code == 5;

    const auto profile = invoke("radial --a 0.42 --b 0.83 --alpha-h 0.8 --beta-h 2.0 --format csv");
    const bool header_ok = profile.output.rfind("t,y,dy\n", 0) == 0;
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("hyharm_acceptance_" + std::to_string(::getpid()) + ".csv");
    cli_test::write_file(tmp.string(), profile.output);
    const int roundtrip_code =
        invoke("tension --map profile --profile-file " + tmp.string() + " --tol 1e-4").exit_code;
    std::filesystem::remove(tmp);

    detail = std::string("determinism ") + (deterministic ? "ok" : "BROKEN") + ", schema " +
             (schema_ok ? "ok" : "BROKEN") + ", exits 2/3/4/5 " +
             ((usage_ok && unreachable_ok && blowup_ok && violation_ok) ? "ok" : "BROKEN") +
             ", profile round-trip " +
             ((header_ok && roundtrip_code == 0) ? "ok" : "BROKEN");
    return deterministic && schema_ok && usage_ok && unreachable_ok && blowup_ok &&
           violation_ok && header_ok && roundtrip_code == 0;
  });

  if (g_failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
