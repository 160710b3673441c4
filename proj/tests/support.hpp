#pragma once

#include <cmath>
#include <algorithm>

namespace hyharm::testing {

// Relative error against a reference value; falls back to absolute error for
// references at (or extremely near) zero.
inline double rel_err(double got, double want) {
  const double scale = std::abs(want);
  if (scale < 1e-300) return std::abs(got - want);
  return std::abs(got - want) / scale;
}

inline double abs_err(double got, double want) { return std::abs(got - want); }

// Closed-form solutions of the radial equation for n = 3, used as
// implementation-independent oracles for the integrator:
//   increasing branch  y(t) = 2 atanh(e^t),  t < 0  (identity boundary data);
//   decreasing branch  y(t) = 2 atanh(e^-t), t > 0  (inversion boundary data).
// Both have derivative -1/sinh(t) on their domains.
inline double increasing_branch(double t) { return 2.0 * std::atanh(std::exp(t)); }
inline double decreasing_branch(double t) { return 2.0 * std::atanh(std::exp(-t)); }
inline double branch_slope(double t) { return -1.0 / std::sinh(t); }

}  // namespace hyharm::testing
