#pragma once

#include <stdexcept>
#include <string>

namespace hyharm {

// A quantity hit a removable or essential singularity of a formula (map
// radius at 0 or 1, polar angle at a coordinate pole, degenerate chart).
class singularity_error : public std::domain_error {
 public:
  explicit singularity_error(const std::string& what) : std::domain_error(what) {}
};

// An initial value problem left the representable range before reaching the
// requested endpoint.  `last_valid_t` is the abscissa of the last accepted
// integration step.
class divergence_error : public std::runtime_error {
 public:
  divergence_error(const std::string& what, double last_valid_t)
      : std::runtime_error(what), last_valid_t_(last_valid_t) {}

  double last_valid_t() const noexcept { return last_valid_t_; }

 private:
  double last_valid_t_;
};

// A boundary value problem has no solution in the searched family (target
// value unreachable, or the shooting bracket collapsed without meeting the
// boundary tolerance).
class no_solution_error : public std::runtime_error {
 public:
  explicit no_solution_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyharm
