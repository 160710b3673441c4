#include "commands.hpp"

#include <CLI11.hpp>

#include <hyharm/bounds.hpp>
#include <hyharm/errors.hpp>
#include <hyharm/geometry.hpp>
#include <hyharm/linalg.hpp>
#include <hyharm/quadrature.hpp>
#include <hyharm/rng.hpp>
#include <hyharm/version.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>

namespace hyharm::cli {
namespace {

void emit(const RunReport& report, const CommonOptions& common,
          const std::vector<std::string>& csv_columns) {
  if (common.format == "csv") {
    write_output(to_csv(report.cases, csv_columns), common.out);
  } else {
    write_output(to_json(report).dump(2) + "\n", common.out);
  }
}

double require_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
  }
  return value;
}

double require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
  return value;
}

// Image radii may arrive in either radius system; convert to both.
struct ImageRadii {
  double alpha = 0.0, beta = 0.0;
  double alpha_h = 0.0, beta_h = 0.0;
};

ImageRadii resolve_image_radii(double alpha, double beta, double alpha_h, double beta_h) {
  const bool euclidean = alpha >= 0.0 || beta >= 0.0;
  const bool hyperbolic = alpha_h >= 0.0 || beta_h >= 0.0;
  if (euclidean && hyperbolic) {
    throw std::invalid_argument(
        "give image radii in one system only: --alpha/--beta or --alpha-h/--beta-h");
  }
  if (!euclidean && !hyperbolic) {
    throw std::invalid_argument("image radii missing: give --alpha/--beta or --alpha-h/--beta-h");
  }
  ImageRadii radii;
  if (euclidean) {
    if (alpha < 0.0 || beta < 0.0) {
      throw std::invalid_argument("both --alpha and --beta are required");
    }
    require_unit_interval(alpha, "--alpha");
    require_unit_interval(beta, "--beta");
    if (!(alpha < beta)) throw std::invalid_argument("--alpha must be smaller than --beta");
    radii = {alpha, beta, 2.0 * std::atanh(alpha), 2.0 * std::atanh(beta)};
  } else {
    if (alpha_h < 0.0 || beta_h < 0.0) {
      throw std::invalid_argument("both --alpha-h and --beta-h are required");
    }
    require_positive(alpha_h, "--alpha-h");
    if (!(beta_h > alpha_h)) throw std::invalid_argument("--alpha-h must be smaller than --beta-h");
    radii = {std::tanh(alpha_h / 2.0), std::tanh(beta_h / 2.0), alpha_h, beta_h};
  }
  return radii;
}

json bound_case(const bounds::NitscheReport& r) {
  json c;
  c["form"] = bounds::to_string(r.form);
  c["lhs"] = r.lhs;
  c["rhs"] = r.rhs;
  c["margin"] = r.margin;
  c["feasible"] = r.feasible;
  c["marginal"] = r.marginal;
  json inputs = json::object();
  if (r.inputs.a) inputs["a"] = *r.inputs.a;
  if (r.inputs.b) inputs["b"] = *r.inputs.b;
  if (r.inputs.alpha) inputs["alpha"] = *r.inputs.alpha;
  if (r.inputs.beta) inputs["beta"] = *r.inputs.beta;
  if (r.inputs.alpha_h) inputs["alpha_h"] = *r.inputs.alpha_h;
  if (r.inputs.beta_h) inputs["beta_h"] = *r.inputs.beta_h;
  c["inputs"] = inputs;
  return c;
}

}  // namespace

int run_bound(const BoundOptions& o) {
  require_unit_interval(o.a, "--a");
  require_unit_interval(o.b, "--b");
  if (!(o.a < o.b)) throw std::invalid_argument("--a must be smaller than --b");
  const ImageRadii img = resolve_image_radii(o.alpha, o.beta, o.alpha_h, o.beta_h);
  const double a_h = 2.0 * std::atanh(o.a);
  const double b_h = 2.0 * std::atanh(o.b);

  std::vector<bounds::BoundForm> forms;
  if (o.form == "all") {
    forms = {bounds::BoundForm::grad, bounds::BoundForm::ratio, bounds::BoundForm::product};
  } else {
    forms = {bounds::bound_form_from_string(o.form)};
  }

  RunReport report;
  report.command = "bound";
  report.config = {{"form", o.form},        {"a", o.a},
                   {"b", o.b},              {"alpha", img.alpha},
                   {"beta", img.beta},      {"alpha_h", img.alpha_h},
                   {"beta_h", img.beta_h}};
  bool feasible_all = true;
  bool marginal_any = false;
  for (const auto form : forms) {
    bounds::NitscheReport r;
    switch (form) {
      case bounds::BoundForm::grad:
        r = bounds::check_grad(o.a, o.b, img.alpha, img.beta);
        break;
      case bounds::BoundForm::ratio:
        r = bounds::check_ratio(a_h, b_h, img.alpha_h, img.beta_h);
        break;
      case bounds::BoundForm::product:
        r = bounds::check_product(o.a, o.b, img.alpha_h, img.beta_h);
        break;
    }
    feasible_all = feasible_all && r.feasible;
    marginal_any = marginal_any || r.marginal;
    report.cases.push_back(bound_case(r));
  }
  report.aggregate = {{"forms", report.cases.size()},
                      {"feasible_all", feasible_all},
                      {"marginal_any", marginal_any}};
  emit(report, o.common, {"form", "lhs", "rhs", "margin", "feasible", "marginal"});
  return kExitOk;
}

int run_radial(const RadialOptions& o) {
  require_unit_interval(o.a, "--a");
  require_unit_interval(o.b, "--b");
  if (!(o.a < o.b)) throw std::invalid_argument("--a must be smaller than --b");
  const double a_h = 2.0 * std::atanh(o.a);
  const double b_h = 2.0 * std::atanh(o.b);

  ImageRadii img;
  if (o.identity) {
    if (o.alpha >= 0.0 || o.beta >= 0.0 || o.alpha_h >= 0.0 || o.beta_h >= 0.0) {
      throw std::invalid_argument("--identity excludes explicit image radii");
    }
    img = {o.a, o.b, a_h, b_h};
  } else {
    img = resolve_image_radii(o.alpha, o.beta, o.alpha_h, o.beta_h);
  }

  radial::BvpOptions bvp;
  bvp.boundary_tol = require_positive(o.boundary_tol, "--boundary-tol");
  bvp.ivp.abs_tol = bvp.ivp.rel_tol = require_positive(o.ivp_tol, "--ivp-tol");
  const auto shot = radial::solve_radial_bvp(a_h, b_h, img.alpha_h, img.beta_h, bvp);

  if (o.common.format == "csv") {
    write_output(profile_to_csv(shot.profile), o.common.out);
  } else {
    RunReport report;
    report.command = "radial";
    report.config = {{"a", o.a},
                     {"b", o.b},
                     {"a_h", a_h},
                     {"b_h", b_h},
                     {"alpha_h", img.alpha_h},
                     {"beta_h", img.beta_h},
                     {"identity", o.identity},
                     {"boundary_tol", o.boundary_tol},
                     {"ivp_tol", o.ivp_tol}};
    json c;
    c["converged"] = shot.converged;
    c["proper"] = shot.proper;
    c["initial_slope"] = shot.initial_slope;
    c["residual"] = shot.residual;
    c["iterations"] = shot.iterations;
    c["nodes"] = shot.profile.size();
    c["profile"] = {{"t", shot.profile.t}, {"y", shot.profile.y}, {"dy", shot.profile.dy}};
    report.cases.push_back(std::move(c));
    report.aggregate = {{"converged", shot.converged}, {"proper", shot.proper}};
    emit(report, o.common, {});
  }
  if (!shot.converged) {
    std::cerr << "shooting did not reach the boundary tolerance (residual " << shot.residual
              << ")\n";
    return kExitNoSolution;
  }
  return kExitOk;
}

int run_sweep_cli(const SweepCliOptions& o) {
  SweepGrid grid;
  grid.a = linspace(o.a_min, o.a_max, o.a_count);
  grid.b = linspace(o.b_min, o.b_max, o.b_count);
  grid.alpha_h = linspace(o.alpha_h_min, o.alpha_h_max, o.alpha_h_count);
  for (double a : grid.a) require_unit_interval(a, "--a-min/--a-max");
  for (double b : grid.b) require_unit_interval(b, "--b-min/--b-max");
  for (double k : grid.alpha_h) require_positive(k, "--alpha-h-min/--alpha-h-max");
  if (!(o.a_max < o.b_min)) {
    throw std::invalid_argument("domain radius ranges must satisfy a-max < b-min");
  }

  SweepOptions options;
  options.bvp.boundary_tol = require_positive(o.boundary_tol, "--boundary-tol");
  options.bvp.ivp.abs_tol = options.bvp.ivp.rel_tol = require_positive(o.ivp_tol, "--ivp-tol");
  options.margin_tol = require_positive(o.margin_tol, "--margin-tol");

  auto outcome = run_sweep(grid, options);

  RunReport report;
  report.command = "sweep";
  report.config = {{"a_min", o.a_min},
                   {"a_max", o.a_max},
                   {"a_count", o.a_count},
                   {"b_min", o.b_min},
                   {"b_max", o.b_max},
                   {"b_count", o.b_count},
                   {"alpha_h_min", o.alpha_h_min},
                   {"alpha_h_max", o.alpha_h_max},
                   {"alpha_h_count", o.alpha_h_count},
                   {"boundary_tol", o.boundary_tol},
                   {"ivp_tol", o.ivp_tol},
                   {"margin_tol", o.margin_tol}};
  report.cases = std::move(outcome.cases);
  report.aggregate = std::move(outcome.aggregate);
  emit(report, o.common,
       {"index", "a", "b", "alpha_h", "status", "beta_h", "slope", "residual", "iterations",
        "converged", "proper", "bound_lhs", "bound_rhs", "margin", "violated", "last_valid_t"});
  return outcome.violations > 0 ? kExitViolation : kExitOk;
}

int run_verify_lemma(const LemmaOptions& o) {
  if (o.dim < 3) throw std::invalid_argument("--dim must be at least 3");
  if (o.trials < 0) throw std::invalid_argument("--trials must be non-negative");
  require_positive(o.tol, "--tol");
  const int n = o.dim;
  // The hidden negative control shrinks the bound by 10%; every equality
  // family must then fail, proving the harness can report violations.
  const double penalty = o.sabotage ? 0.9 : 1.0;

  Rng rng(o.common.seed);
  auto basis_inputs = [n]() {
    std::vector<Eigen::VectorXd> xs;
    for (int i = 1; i < n; ++i) xs.push_back(Eigen::VectorXd::Unit(n, i));
    return xs;
  };
  auto rel_gap = [&](const Eigen::MatrixXd& a, const std::vector<Eigen::VectorXd>& xs) {
    const auto check = linalg::verify_cross_inequality(a, xs);
    const double rhs = check.rhs * penalty;
    const double scale = std::max({std::abs(check.lhs), std::abs(rhs), 1e-300});
    return std::abs(check.lhs - rhs) / scale;
  };

  RunReport report;
  report.command = "verify-lemma";
  report.config = {{"trials", o.trials},
                   {"dim", o.dim},
                   {"seed", o.common.seed},
                   {"tol", o.tol},
                   {"sabotage", o.sabotage}};

  bool families_pass = true;
  double max_equality_gap = 0.0;
  auto push_family = [&](const std::string& name, int repetitions, double max_gap) {
    const bool pass = max_gap <= o.tol;
    families_pass = families_pass && pass;
    max_equality_gap = std::max(max_equality_gap, max_gap);
    json c;
    c["family"] = name;
    c["repetitions"] = repetitions;
    c["max_rel_gap"] = max_gap;
    c["pass"] = pass;
    report.cases.push_back(std::move(c));
  };

  {  // Orthogonal matrices attain equality for arbitrary inputs.
    double max_gap = 0.0;
    const int reps = 20;
    for (int i = 0; i < reps; ++i) {
      std::vector<Eigen::VectorXd> xs;
      for (int k = 1; k < n; ++k) xs.push_back(rng.uniform_vector(n, -2.0, 2.0));
      max_gap = std::max(max_gap, rel_gap(rng.orthogonal(n), xs));
    }
    push_family("orthogonal", reps, max_gap);
  }
  {  // diag(1, K, ..., K) with the last n-1 basis vectors: both sides K^(n-1).
    double max_gap = 0.0;
    const std::vector<double> ks = {1.0, 2.0, 5.0, 10.0};
    for (double k : ks) {
      Eigen::VectorXd d = Eigen::VectorXd::Constant(n, k);
      d[0] = 1.0;
      max_gap = std::max(max_gap, rel_gap(d.asDiagonal(), basis_inputs()));
    }
    push_family("stretch", static_cast<int>(ks.size()), max_gap);
  }
  {  // Rank n-1 projection diag(0, 1, ..., 1): both sides 1 at infinite distortion.
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    d[0] = 0.0;
    push_family("projection", 1, rel_gap(d.asDiagonal(), basis_inputs()));
  }

  int violations = 0;
  double min_slack_rel = std::numeric_limits<double>::infinity();
  double max_adjugate_residual_rel = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    Eigen::MatrixXd a = rng.matrix_uniform(n, n, -2.0, 2.0);
    if (t % 7 == 3) a.row(n - 1) = a.row(0) + a.row(1);  // exactly rank-deficient
    if (t % 11 == 5) a *= 50.0;                          // scale robustness
    std::vector<Eigen::VectorXd> xs;
    for (int k = 1; k < n; ++k) xs.push_back(rng.uniform_vector(n, -2.0, 2.0));
    const auto check = linalg::verify_cross_inequality(a, xs);
    const double rhs = check.rhs * penalty;
    if (check.lhs > rhs * (1.0 + o.tol)) ++violations;
    min_slack_rel = std::min(min_slack_rel, (rhs - check.lhs) / std::max(rhs, 1e-300));
    double input_scale = 1.0;
    for (const auto& x : xs) input_scale *= x.norm();
    const double residual_scale = std::pow(a.norm(), n - 1) * input_scale + 1.0;
    max_adjugate_residual_rel =
        std::max(max_adjugate_residual_rel,
                 linalg::adjugate_identity_residual(a, xs) / residual_scale);
  }

  report.aggregate = {{"families_pass", families_pass},
                      {"max_equality_gap", max_equality_gap},
                      {"trials", o.trials},
                      {"violations", violations},
                      {"min_slack_rel", min_slack_rel},
                      {"max_adjugate_residual_rel", max_adjugate_residual_rel}};
  emit(report, o.common, {"family", "repetitions", "max_rel_gap", "pass"});
  return (violations > 0 || !families_pass) ? kExitViolation : kExitOk;
}

int run_verify_prop(const PropOptions& o) {
  require_positive(o.fd_step, "--fd-step");
  tension::MapField field;
  if (o.map == "identity") {
    field = tension::identity_map();
  } else if (o.map == "inversion") {
    field = tension::inversion_map();
  } else if (o.map == "moebius") {
    if (o.center.size() != 3) throw std::invalid_argument("--center needs three components");
    Eigen::Vector3d c(o.center[0], o.center[1], o.center[2]);
    auto mob = std::make_shared<geometry::MobiusMap>(
        geometry::mobius_to_origin(geometry::BallPoint(c)));
    field.eval = [mob](const Eigen::Vector3d& x) -> Eigen::Vector3d {
      return Eigen::Vector3d(mob->apply(x));
    };
  } else {
    throw std::invalid_argument("unknown map: " + o.map);
  }

  const tension::FdOptions fd{o.fd_step, false};
  RunReport report;
  report.command = "verify-prop";
  report.config = {{"map", o.map}, {"order", o.order}, {"fd_step", o.fd_step}};
  json c;
  quadrature::BoundCheck check;
  if (o.volume) {
    require_positive(o.r_in, "--r-in");
    if (!(o.r_out > o.r_in)) throw std::invalid_argument("--r-in must be smaller than --r-out");
    report.config["r_in"] = o.r_in;
    report.config["r_out"] = o.r_out;
    check = quadrature::check_volume_bound(field, o.r_in, o.r_out, o.order, fd);
    c["kind"] = "volume";
    c["r_in"] = o.r_in;
    c["r_out"] = o.r_out;
  } else {
    quadrature::ParamSurface surface;
    if (o.surface == "sphere") {
      require_positive(o.radius, "--radius");
      surface = quadrature::sphere_surface(o.radius);
      report.config["surface"] = "sphere";
      report.config["radius"] = o.radius;
    } else if (o.surface == "ellipsoid") {
      if (o.semi_axes.size() != 3) throw std::invalid_argument("--semi-axes needs three values");
      for (double ax : o.semi_axes) require_positive(ax, "--semi-axes");
      surface = quadrature::ellipsoid_surface(o.semi_axes[0], o.semi_axes[1], o.semi_axes[2]);
      report.config["surface"] = "ellipsoid";
      report.config["semi_axes"] = o.semi_axes;
    } else {
      throw std::invalid_argument("unknown surface: " + o.surface);
    }
    check = quadrature::check_surface_bound(field, surface, o.order, fd);
    c["kind"] = "surface";
    c["surface"] = o.surface;
  }
  c["integral"] = check.integral;
  c["bound"] = check.bound;
  c["ratio"] = check.ratio;
  c["holds"] = check.holds;
  report.cases.push_back(std::move(c));
  report.aggregate = {{"holds", check.holds}, {"ratio", check.ratio}};
  emit(report, o.common, {"kind", "surface", "integral", "bound", "ratio", "holds"});
  return check.holds ? kExitOk : kExitViolation;
}

int run_tension(const TensionOptions& o) {
  if (o.samples < 1) throw std::invalid_argument("--samples must be at least 1");
  require_positive(o.fd_step, "--fd-step");
  require_positive(o.tol, "--tol");
  if (!(o.pole_margin > 0.0 && o.pole_margin < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("--pole-margin must lie in (0, pi/2)");
  }
  tension::Tau1Variant variant;
  if (o.variant == "proof") {
    variant = tension::Tau1Variant::proof;
  } else if (o.variant == "literal") {
    variant = tension::Tau1Variant::literal;
  } else {
    throw std::invalid_argument("unknown --variant: " + o.variant);
  }

  const BuiltMap built = build_map(o.map);
  const double lo = o.r_min > 0.0 ? o.r_min : built.sample_lo;
  const double hi = o.r_max > 0.0 ? o.r_max : built.sample_hi;
  if (!(lo > 0.0 && lo < hi)) {
    throw std::invalid_argument("sampling annulus needs 0 < r-min < r-max");
  }

  const tension::FdOptions fd{o.fd_step, o.richardson};
  Rng rng(o.common.seed);
  auto sample_point = [&]() {
    const double r = rng.uniform(lo, hi);
    const double theta = rng.uniform(o.pole_margin, std::numbers::pi - o.pole_margin);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return Eigen::Vector3d(r * std::sin(theta) * std::cos(phi),
                           r * std::sin(theta) * std::sin(phi), r * std::cos(theta));
  };

  RunReport report;
  report.command = "tension";
  report.config = {{"map", o.map.name},
                   {"samples", o.samples},
                   {"seed", o.common.seed},
                   {"fd_step", o.fd_step},
                   {"richardson", o.richardson},
                   {"tol", o.tol},
                   {"r_min", lo},
                   {"r_max", hi},
                   {"pole_margin", o.pole_margin},
                   {"variant", o.variant},
                   {"residual", built.euclidean ? "flat_laplacian" : "tension"}};
  if (o.map.name == "flat-radial") {
    report.config["flat_a"] = o.map.flat_a;
    report.config["flat_alpha"] = o.map.flat_alpha;
  }
  if (o.map.name == "direction") {
    report.config["dir_c0"] = o.map.dir_c0;
    report.config["dir_c1"] = o.map.dir_c1;
  }
  if (!o.map.profile_file.empty()) report.config["profile_file"] = o.map.profile_file;

  double max_residual = 0.0;
  json maxima = json::object();
  std::vector<std::string> csv_columns;
  if (built.euclidean) {
    double max_lap = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const Eigen::Vector3d x = sample_point();
      json c;
      c["index"] = i;
      c["x0"] = x[0];
      c["x1"] = x[1];
      c["x2"] = x[2];
      c["rho"] = x.norm();
      double residual = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double lap = tension::fd_laplacian(
            [&](const Eigen::Vector3d& p) { return built.field.eval(p)[k]; }, x, o.fd_step);
        c["lap" + std::to_string(k)] = lap;
        residual = std::max(residual, std::abs(lap));
      }
      c["residual"] = residual;
      max_lap = std::max(max_lap, residual);
      report.cases.push_back(std::move(c));
    }
    max_residual = max_lap;
    maxima["max_abs_laplacian"] = max_lap;
    csv_columns = {"index", "x0", "x1", "x2", "rho", "lap0", "lap1", "lap2", "residual"};
  } else {
    double max_tau1 = 0.0, max_colat = 0.0, max_long = 0.0, max_hyplap = 0.0;
    for (int i = 0; i < o.samples; ++i) {
      const Eigen::Vector3d x = sample_point();
      const double t1 = tension::tau1(built.field, x, fd, variant);
      const Eigen::Vector2d ta = tension::tau_angular(built.field, x, fd);
      const double hl = tension::hyplap_residual(built.field, x, fd);
      json c;
      c["index"] = i;
      c["x0"] = x[0];
      c["x1"] = x[1];
      c["x2"] = x[2];
      c["rho"] = x.norm();
      c["tau1"] = t1;
      c["tau_colat"] = ta[0];
      c["tau_long"] = ta[1];
      c["hyplap"] = hl;
      const double residual =
          std::max({std::abs(t1), std::abs(ta[0]), std::abs(ta[1]), std::abs(hl)});
      c["residual"] = residual;
      max_tau1 = std::max(max_tau1, std::abs(t1));
      max_colat = std::max(max_colat, std::abs(ta[0]));
      max_long = std::max(max_long, std::abs(ta[1]));
      max_hyplap = std::max(max_hyplap, std::abs(hl));
      max_residual = std::max(max_residual, residual);
      report.cases.push_back(std::move(c));
    }
    maxima["max_abs_tau1"] = max_tau1;
    maxima["max_abs_tau_colat"] = max_colat;
    maxima["max_abs_tau_long"] = max_long;
    maxima["max_abs_hyplap"] = max_hyplap;
    csv_columns = {"index", "x0",   "x1",        "x2",       "rho",   "tau1",
                   "tau_colat", "tau_long", "hyplap", "residual"};
  }

  const bool pass = max_residual <= o.tol;
  report.aggregate = maxima;
  report.aggregate["samples"] = o.samples;
  report.aggregate["max_residual"] = max_residual;
  report.aggregate["threshold"] = o.tol;
  report.aggregate["pass"] = pass;
  emit(report, o.common, csv_columns);
  return pass ? kExitOk : kExitViolation;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> merge_config_args(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::string> merged = args;
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    }
    const std::string flag = "--" + key;
    const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& arg) {
      return arg == flag || arg.rfind(flag + "=", 0) == 0;
    });
    if (!present) merged.push_back(flag + "=" + value);
  }
  return merged;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> raw;
  raw.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) raw.emplace_back(argv[i]);
  std::vector<std::string> args;
  try {
    args = merge_config_args(raw);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"bounds, radial harmonic maps, and verification checks for annulus mappings "
               "of three-dimensional hyperbolic space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  BoundOptions bound;
  RadialOptions radial_opts;
  SweepCliOptions sweep_opts;
  LemmaOptions lemma;
  PropOptions prop;
  TensionOptions tension_opts;

  const auto add_common = [](CLI::App* sub, CommonOptions& common) {
    sub->add_option("--format", common.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", common.out, "output path (default: stdout)");
    sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
    sub->add_option("--config", common.config,
                    "key=value file merged into the options; command-line flags win");
  };

  CLI::App* b = app.add_subcommand("bound", "evaluate the annulus-mapping lower bound");
  add_common(b, bound.common);
  b->add_option("--form", bound.form, "grad | ratio | product | all")
      ->check(CLI::IsMember({"grad", "ratio", "product", "all"}))
      ->capture_default_str();
  b->add_option("--a", bound.a, "inner domain radius, Euclidean")->required();
  b->add_option("--b", bound.b, "outer domain radius, Euclidean")->required();
  b->add_option("--alpha", bound.alpha, "inner image radius, Euclidean");
  b->add_option("--beta", bound.beta, "outer image radius, Euclidean");
  b->add_option("--alpha-h", bound.alpha_h, "inner image radius, hyperbolic");
  b->add_option("--beta-h", bound.beta_h, "outer image radius, hyperbolic");

  CLI::App* r = app.add_subcommand("radial", "solve the radial two-point problem by shooting");
  add_common(r, radial_opts.common);
  r->add_option("--a", radial_opts.a, "inner domain radius, Euclidean")->required();
  r->add_option("--b", radial_opts.b, "outer domain radius, Euclidean")->required();
  r->add_flag("--identity", radial_opts.identity, "image radii equal the domain radii");
  r->add_option("--alpha", radial_opts.alpha, "inner image radius, Euclidean");
  r->add_option("--beta", radial_opts.beta, "outer image radius, Euclidean");
  r->add_option("--alpha-h", radial_opts.alpha_h, "inner image radius, hyperbolic");
  r->add_option("--beta-h", radial_opts.beta_h, "outer image radius, hyperbolic");
  r->add_option("--boundary-tol", radial_opts.boundary_tol, "shooting convergence tolerance")
      ->capture_default_str();
  r->add_option("--ivp-tol", radial_opts.ivp_tol, "integrator error tolerance")
      ->capture_default_str();

  CLI::App* s = app.add_subcommand(
      "sweep", "grid-scan extremal radial solutions against the product-form bound");
  add_common(s, sweep_opts.common);
  s->add_option("--a-min", sweep_opts.a_min, "inner domain radius range, Euclidean")
      ->capture_default_str();
  s->add_option("--a-max", sweep_opts.a_max, "inner domain radius range, Euclidean")
      ->capture_default_str();
  s->add_option("--a-count", sweep_opts.a_count, "grid points along a")->capture_default_str();
  s->add_option("--b-min", sweep_opts.b_min, "outer domain radius range, Euclidean")
      ->capture_default_str();
  s->add_option("--b-max", sweep_opts.b_max, "outer domain radius range, Euclidean")
      ->capture_default_str();
  s->add_option("--b-count", sweep_opts.b_count, "grid points along b")->capture_default_str();
  s->add_option("--alpha-h-min", sweep_opts.alpha_h_min, "inner image radius range, hyperbolic")
      ->capture_default_str();
  s->add_option("--alpha-h-max", sweep_opts.alpha_h_max, "inner image radius range, hyperbolic")
      ->capture_default_str();
  s->add_option("--alpha-h-count", sweep_opts.alpha_h_count, "grid points along alpha-h")
      ->capture_default_str();
  s->add_option("--boundary-tol", sweep_opts.boundary_tol, "shooting boundary tolerance")
      ->capture_default_str();
  s->add_option("--ivp-tol", sweep_opts.ivp_tol, "integrator error tolerance")
      ->capture_default_str();
  s->add_option("--margin-tol", sweep_opts.margin_tol,
                "relative slack before a negative margin counts as a violation")
      ->capture_default_str();

  CLI::App* l = app.add_subcommand(
      "verify-lemma", "fuzz the cross-product distortion inequality and its equality cases");
  add_common(l, lemma.common);
  l->add_option("--trials", lemma.trials, "number of random matrices")->capture_default_str();
  l->add_option("--dim", lemma.dim, "ambient dimension (>= 3)")->capture_default_str();
  l->add_option("--tol", lemma.tol, "relative allowance on slack and equality gaps")
      ->capture_default_str();
  l->add_flag("--sabotage", lemma.sabotage)->group("");  // hidden harness self-test

  CLI::App* p = app.add_subcommand(
      "verify-prop", "check the lower bound for surface integrals of direction-field energy");
  add_common(p, prop.common);
  p->add_option("--map", prop.map, "identity | inversion | moebius")
      ->check(CLI::IsMember({"identity", "inversion", "moebius"}))
      ->capture_default_str();
  p->add_option("--surface", prop.surface, "sphere | ellipsoid")
      ->check(CLI::IsMember({"sphere", "ellipsoid"}))
      ->capture_default_str();
  p->add_option("--radius", prop.radius, "sphere radius")->capture_default_str();
  p->add_option("--semi-axes", prop.semi_axes, "ellipsoid semi-axes")->expected(3);
  p->add_option("--center", prop.center, "translation center for the moebius map")->expected(3);
  p->add_flag("--volume", prop.volume, "integrate over a shell instead of one surface");
  p->add_option("--r-in", prop.r_in, "shell inner radius")->capture_default_str();
  p->add_option("--r-out", prop.r_out, "shell outer radius")->capture_default_str();
  p->add_option("--order", prop.order, "quadrature order")->capture_default_str();
  p->add_option("--fd-step", prop.fd_step, "finite-difference step")->capture_default_str();

  CLI::App* t = app.add_subcommand(
      "tension", "sample tension-field residuals of a map over an annulus");
  add_common(t, tension_opts.common);
  t->add_option("--map", tension_opts.map.name,
                "identity | inversion | flat-radial | direction | profile")
      ->check(CLI::IsMember(known_map_names()))
      ->capture_default_str();
  t->add_option("--profile-file", tension_opts.map.profile_file,
                "CSV profile (t,y,dy) for --map profile");
  t->add_option("--flat-a", tension_opts.map.flat_a, "flat-radial inner domain radius")
      ->capture_default_str();
  t->add_option("--flat-alpha", tension_opts.map.flat_alpha, "flat-radial inner image radius")
      ->capture_default_str();
  t->add_option("--dir-c0", tension_opts.map.dir_c0, "direction map constant term")
      ->capture_default_str();
  t->add_option("--dir-c1", tension_opts.map.dir_c1, "direction map linear term")
      ->capture_default_str();
  t->add_option("--samples", tension_opts.samples, "number of sample points")
      ->capture_default_str();
  t->add_option("--fd-step", tension_opts.fd_step, "finite-difference step")
      ->capture_default_str();
  t->add_flag("--richardson", tension_opts.richardson, "extrapolate the h and h/2 stencils");
  t->add_option("--tol", tension_opts.tol, "residual threshold; exceeding it exits 5")
      ->capture_default_str();
  t->add_option("--r-min", tension_opts.r_min, "sampling annulus inner radius (0 = map default)");
  t->add_option("--r-max", tension_opts.r_max, "sampling annulus outer radius (0 = map default)");
  t->add_option("--pole-margin", tension_opts.pole_margin,
                "colatitude margin kept around the sampling poles")
      ->capture_default_str();
  t->add_option("--variant", tension_opts.variant, "proof | literal radial tension term")
      ->check(CLI::IsMember({"proof", "literal"}))
      ->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (b->parsed()) return run_bound(bound);
    if (r->parsed()) return run_radial(radial_opts);
    if (s->parsed()) return run_sweep_cli(sweep_opts);
    if (l->parsed()) return run_verify_lemma(lemma);
    if (p->parsed()) return run_verify_prop(prop);
    if (t->parsed()) return run_tension(tension_opts);
  } catch (const no_solution_error& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const divergence_error& e) {
    std::cerr << "divergence: " << e.what() << " (last valid t " << e.last_valid_t() << ")\n";
    return kExitDivergence;
  } catch (const singularity_error& e) {
    std::cerr << "singularity: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace hyharm::cli
