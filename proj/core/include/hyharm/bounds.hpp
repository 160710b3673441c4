#pragma once

#include <optional>
#include <string>

namespace hyharm::bounds {

// The three algebraically equivalent forms of the annulus-mapping bound.
//   grad:   closed form in the Euclidean radii (a, b) and (alpha, beta);
//   ratio:  beta_h / alpha_h >= minimal ratio, in hyperbolic radii;
//   product: fully multiplied-out polynomial/log form, numerically the
//            most robust near alpha -> a degeneracy.
enum class BoundForm { grad, ratio, product };

std::string to_string(BoundForm form);
BoundForm bound_form_from_string(const std::string& name);

// Inputs actually used by a check, echoed into reports.  Optional fields stay
// empty when a form does not consume them.
struct BoundInputs {
  std::optional<double> a, b, alpha, beta;      // Euclidean radii
  std::optional<double> alpha_h, beta_h;        // hyperbolic radii
};

// Verdict of one bound evaluation.  `margin` = lhs - rhs, so the inequality
// holds iff margin >= 0; `feasible` allows a relative rounding allowance of
// 1e-12 and `marginal` flags |margin| within that same allowance.
struct NitscheReport {
  BoundForm form = BoundForm::grad;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool feasible = false;
  bool marginal = false;
  BoundInputs inputs;
};

// Right-hand side of the gradient form:
//   (a/b - 1 - log(a/b)) / (1 + log((1-a^2)/(1-b^2))),
// computed with cancellation-free kernels (series for the numerator when
// a/b is within 1e-3 of 1, log1p for the denominator).
double grad_rhs(double a, double b);

// Left-hand side of the gradient form:
//   (1-alpha^2)^2 / (4 alpha (1+alpha^2)) * log( (1+beta)(1-alpha) / ((1+alpha)(1-beta)) ),
// equal to (beta_h - alpha_h) / sinh(2 alpha_h) in hyperbolic radii; evaluated
// via atanh((beta - alpha)/(1 - alpha beta)) so close radii never cancel.
double grad_lhs(double alpha, double beta);

// Full check of the gradient form for Euclidean radii 0 < a < b < 1,
// 0 < alpha < beta < 1.
NitscheReport check_grad(double a, double b, double alpha, double beta);

// Minimal admissible ratio beta_h / alpha_h as a function of the hyperbolic
// data (a_h, b_h, alpha_h):
//   1 + sinh(2 alpha_h) / alpha_h * N / D
// with N = q - 1 - log q, q = tanh(a_h/2)/tanh(b_h/2), and
// D = 1 + 2 log(cosh(b_h/2)/cosh(a_h/2)).
double ratio_min(double a_h, double b_h, double alpha_h);

// Ratio-form check: lhs = beta_h / alpha_h, rhs = ratio_min(a_h, b_h, alpha_h).
NitscheReport check_ratio(double a_h, double b_h, double alpha_h, double beta_h);

// Product-form check in mixed coordinates (Euclidean domain radii, hyperbolic
// target radii):
//   (beta_h - alpha_h) * (1 + log((1-a^2)/(1-b^2)))
//     >= sinh(2 alpha_h) * (a/b - 1 - log(a/b)).
NitscheReport check_product(double a, double b, double alpha_h, double beta_h);

// The factor sinh(2 t) / t: strictly increasing and > 2 for every t > 0,
// which is why the ratio-form minimal ratio always exceeds 1 + 2 N / D.
double slope_factor(double t);

}  // namespace hyharm::bounds
