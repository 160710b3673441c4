#include "hyharm/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace hyharm::bounds {

namespace {

constexpr double kFeasibleSlack = 1e-12;

void check_unit_radius(double v, const char* name) {
  if (!(v > 0.0) || !(v < 1.0))
    throw std::domain_error(std::string(name) + " must lie in (0, 1)");
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(name) + " must be positive and finite");
}

// q - 1 - log(q) for q in (0, 1]: non-negative, vanishing only at q = 1.
// Near q = 1 both terms cancel to O(u^2), so a short alternating series in
// u = q - 1 takes over (|u| < 1e-3 keeps the truncation below 1e-31).
double shifted_log(double q) {
  const double u = q - 1.0;
  if (std::abs(u) < 1e-3) {
    double sum = 0.0;
    double upow = u;  // u^k, starting at k = 1
    for (int k = 2; k <= 9; ++k) {
      upow *= u;
      const double term = upow / k;
      sum += ((k % 2) == 0) ? term : -term;
    }
    return sum;
  }
  return u - std::log1p(u);
}

// log((1-a^2)/(1-b^2)) for 0 < a < b < 1, always >= 0, without forming either
// difference of squares.
double log_weight(double a, double b) {
  return std::log1p((b - a) * (b + a) / ((1.0 - b) * (1.0 + b)));
}

// atanh(beta) - atanh(alpha) evaluated as one atanh of the Moebius quotient.
double atanh_diff(double alpha, double beta) {
  return std::atanh((beta - alpha) / (1.0 - alpha * beta));
}

NitscheReport finish(NitscheReport report) {
  report.margin = report.lhs - report.rhs;
  const double scale = std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});
  report.feasible = report.margin >= -kFeasibleSlack * scale;
  report.marginal = std::abs(report.margin) <= kFeasibleSlack * scale;
  return report;
}

}  // namespace

std::string to_string(BoundForm form) {
  switch (form) {
    case BoundForm::grad: return "grad";
    case BoundForm::ratio: return "ratio";
    case BoundForm::product: return "product";
  }
  throw std::invalid_argument("unknown bound form");
}

BoundForm bound_form_from_string(const std::string& name) {
  if (name == "grad") return BoundForm::grad;
  if (name == "ratio") return BoundForm::ratio;
  if (name == "product") return BoundForm::product;
  throw std::invalid_argument("unknown bound form '" + name + "'");
}

double grad_rhs(double a, double b) {
  check_unit_radius(a, "a");
  check_unit_radius(b, "b");
  if (!(a < b)) throw std::domain_error("grad_rhs requires a < b");
  return shifted_log(a / b) / (1.0 + log_weight(a, b));
}

double grad_lhs(double alpha, double beta) {
  check_unit_radius(alpha, "alpha");
  check_unit_radius(beta, "beta");
  if (!(alpha < beta)) throw std::domain_error("grad_lhs requires alpha < beta");
  const double w = (1.0 - alpha) * (1.0 + alpha);  // 1 - alpha^2
  const double prefactor = w * w / (4.0 * alpha * (1.0 + alpha * alpha));
  // log((1+beta)(1-alpha) / ((1+alpha)(1-beta))) = 2 (atanh beta - atanh alpha).
  return prefactor * 2.0 * atanh_diff(alpha, beta);
}

NitscheReport check_grad(double a, double b, double alpha, double beta) {
  NitscheReport report;
  report.form = BoundForm::grad;
  report.lhs = grad_lhs(alpha, beta);
  report.rhs = grad_rhs(a, b);
  report.inputs.a = a;
  report.inputs.b = b;
  report.inputs.alpha = alpha;
  report.inputs.beta = beta;
  return finish(report);
}

double slope_factor(double t) {
  check_positive(t, "t");
  if (t < 1e-4) {
    // sinh(2t)/t = 2 + (4/3) t^2 + O(t^4); the direct quotient is fine even
    // here, the series just avoids the 0/0 shape reading ambiguity.
    const double t2 = t * t;
    return 2.0 + t2 * (4.0 / 3.0 + t2 * (4.0 / 15.0));
  }
  return std::sinh(2.0 * t) / t;
}

double ratio_min(double a_h, double b_h, double alpha_h) {
  check_positive(a_h, "a_h");
  check_positive(b_h, "b_h");
  check_positive(alpha_h, "alpha_h");
  if (!(a_h < b_h)) throw std::domain_error("ratio_min requires a_h < b_h");
  const double q = std::tanh(a_h / 2.0) / std::tanh(b_h / 2.0);
  const double num = shifted_log(q);
  // 1 + 2 log(cosh(b_h/2)/cosh(a_h/2)) = 1 + log((1-a^2)/(1-b^2)) with
  // a = tanh(a_h/2), b = tanh(b_h/2).
  const double den = 1.0 + 2.0 * (std::log(std::cosh(b_h / 2.0)) - std::log(std::cosh(a_h / 2.0)));
  return 1.0 + slope_factor(alpha_h) * num / den;
}

NitscheReport check_ratio(double a_h, double b_h, double alpha_h, double beta_h) {
  check_positive(beta_h, "beta_h");
  if (!(alpha_h < beta_h)) throw std::domain_error("check_ratio requires alpha_h < beta_h");
  NitscheReport report;
  report.form = BoundForm::ratio;
  report.lhs = beta_h / alpha_h;
  report.rhs = ratio_min(a_h, b_h, alpha_h);
  report.inputs.a = std::tanh(a_h / 2.0);
  report.inputs.b = std::tanh(b_h / 2.0);
  report.inputs.alpha_h = alpha_h;
  report.inputs.beta_h = beta_h;
  return finish(report);
}

NitscheReport check_product(double a, double b, double alpha_h, double beta_h) {
  check_unit_radius(a, "a");
  check_unit_radius(b, "b");
  if (!(a < b)) throw std::domain_error("check_product requires a < b");
  check_positive(alpha_h, "alpha_h");
  check_positive(beta_h, "beta_h");
  if (!(alpha_h < beta_h)) throw std::domain_error("check_product requires alpha_h < beta_h");
  NitscheReport report;
  report.form = BoundForm::product;
  report.lhs = (beta_h - alpha_h) * (1.0 + log_weight(a, b));
  report.rhs = std::sinh(2.0 * alpha_h) * shifted_log(a / b);
  report.inputs.a = a;
  report.inputs.b = b;
  report.inputs.alpha_h = alpha_h;
  report.inputs.beta_h = beta_h;
  return finish(report);
}

}  // namespace hyharm::bounds
